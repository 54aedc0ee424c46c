#include "nlmbench/noise.hpp"

#include <cmath>
#include <numbers>

namespace nlmbench {

double GaussianSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Box-Muller on 53-bit uniforms; u1 is shifted into (0,1] so the log is
    // always finite.
    constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * kInv53;
    const double u2 = static_cast<double>(gen_() >> 11) * kInv53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Image add_gaussian_noise(const Image& img, const NoiseSpec& spec) {
    if (!(spec.level > 0.0) || spec.level > 1.0) {
        throw InvalidArgument("noise level must be in (0, 1]");
    }
    const double sigma = spec.sigma();
    GaussianSampler sampler(spec.seed);
    Image out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        out.data()[i] = img.data()[i] + sigma * sampler.next();
    }
    return out;
}

}  // namespace nlmbench
