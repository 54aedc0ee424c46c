#include "nlmbench/metrics.hpp"

#include <cmath>
#include <vector>

namespace nlmbench {

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

}  // namespace

double rmse(const Image& a, const Image& b) {
    if (!a.same_size(b)) {
        throw DimensionMismatch("rmse requires equal image dimensions");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a.data()[i] - b.data()[i];
        sum += diff * diff;
    }
    return std::sqrt(sum / static_cast<double>(a.size()));
}

double ssim(const Image& a, const Image& b) {
    if (!a.same_size(b)) {
        throw DimensionMismatch("ssim requires equal image dimensions");
    }
    if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
        throw InvalidArgument("ssim needs both dimensions >= 11");
    }

    const int radius = kSsimWindow / 2;
    double window[kSsimWindow * kSsimWindow];
    {
        const double inv_two_sigma2 = 1.0 / (2.0 * kSsimSigma * kSsimSigma);
        double sum = 0.0;
        int k = 0;
        for (int dr = -radius; dr <= radius; ++dr) {
            for (int dc = -radius; dc <= radius; ++dc, ++k) {
                window[k] = std::exp(-(dr * dr + dc * dc) * inv_two_sigma2);
                sum += window[k];
            }
        }
        for (double& w : window) w /= sum;
    }

    double total = 0.0;
    for (int r = 0; r < a.height(); ++r) {
        for (int c = 0; c < a.width(); ++c) {
            // Local stats under the Gaussian window, renormalized by the
            // in-bounds kernel mass at the borders.
            double wsum = 0.0, sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
            for (int dr = -radius; dr <= radius; ++dr) {
                const int rr = r + dr;
                if (rr < 0 || rr >= a.height()) continue;
                for (int dc = -radius; dc <= radius; ++dc) {
                    const int cc = c + dc;
                    if (cc < 0 || cc >= a.width()) continue;
                    const double w = window[(dr + radius) * kSsimWindow + (dc + radius)];
                    const double va = a.at(rr, cc);
                    const double vb = b.at(rr, cc);
                    wsum += w;
                    sa += w * va;
                    sb += w * vb;
                    saa += w * va * va;
                    sbb += w * vb * vb;
                    sab += w * va * vb;
                }
            }
            const double mu_a = sa / wsum;
            const double mu_b = sb / wsum;
            const double var_a = saa / wsum - mu_a * mu_a;
            const double var_b = sbb / wsum - mu_b * mu_b;
            const double cov = sab / wsum - mu_a * mu_b;
            total += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
                     ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
        }
    }
    return total / static_cast<double>(a.size());
}

}  // namespace nlmbench
