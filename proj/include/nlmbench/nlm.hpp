#pragma once

#include <optional>
#include <vector>

#include "nlmbench/image.hpp"

namespace nlmbench {

/// Rule for the self-comparison weight w(p,p). The literal rule keeps the
/// value exp(0) = 1, which can dominate at high noise and preserve it; the
/// alternative replaces it with the largest weight among the other candidates
/// before normalization.
enum class CenterWeight {
    literal,
    max_of_others,
};

struct FilterParams {
    int patch_side = 3;
    /// Search window half-width; nullopt searches the whole image.
    std::optional<int> search_radius = 10;
    /// Smoothing parameter in gray-level units. Distances are not divided by
    /// the patch size, so useful values scale with patch energy.
    double h = 10.0;
    /// Std dev of the spatial Gaussian inside the patch distance.
    double rho = 1.0;
    CenterWeight center_weight = CenterWeight::literal;
    /// Worker threads for the row-parallel filter loops; 0 = one per core.
    /// Results are identical regardless of this value.
    int threads = 0;
};

/// Normalized, radially symmetric Gaussian weights over patch positions,
/// same row-major scan order as Patch.
struct SpatialKernel {
    int side = 0;
    std::vector<double> values;
};

/// Kernel entry at offset (dr, dc) from the center is proportional to
/// exp(-(dr^2 + dc^2) / (2 rho^2)); entries sum to 1.
SpatialKernel gaussian_kernel(int side, double rho);

/// Spatially weighted squared patch difference:
/// sum_k kernel[k] * (p[k] - q[k])^2.
double patch_distance(const Patch& p, const Patch& q, const SpatialKernel& kernel);

struct PixelWeight {
    int row = 0;
    int col = 0;
    double weight = 0.0;
};

/// Normalized similarity weights for every pixel in the search window around
/// (row, col), in row-major window order. Weights sum to 1.
std::vector<PixelWeight> nlm_weights(const Image& img, int row, int col,
                                     const FilterParams& params);

/// Non-local means: each output pixel is the weighted average of the search
/// window, weights exp(-d(p,q)/h^2) normalized per pixel.
Image nlm_filter(const Image& img, const FilterParams& params);

void validate_params(const FilterParams& params);

}  // namespace nlmbench
