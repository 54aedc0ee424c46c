#pragma once

#include <cstdint>
#include <random>

#include "nlmbench/image.hpp"

namespace nlmbench {

/// Identity of the noise generator, recorded in benchmark reports so runs can
/// be reproduced. Standard normals come from a Box-Muller transform driven by
/// std::mt19937_64, both of which are fully specified algorithms; a platform's
/// std::normal_distribution is deliberately not used.
inline constexpr const char* kRngAlgorithm = "mt19937_64/box-muller";

/// Noise amount expressed as a fraction of the maximum gray level:
/// level 0.05 means sigma = 0.05 * 255 = 12.75 gray levels.
struct NoiseSpec {
    double level = 0.05;
    std::uint64_t seed = 0;

    double sigma() const { return level * 255.0; }
};

/// Deterministic standard-normal sampler (see kRngAlgorithm).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : gen_(seed) {}

    double next();

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Adds i.i.d. zero-mean Gaussian noise with sigma = level * 255 in row-major
/// pixel order. The result is not clamped. Identical (img, spec) pairs yield
/// bit-identical outputs.
Image add_gaussian_noise(const Image& img, const NoiseSpec& spec);

}  // namespace nlmbench
