#include "nlmbench/nlm.hpp"

#include <cmath>

#include "filter_engine.hpp"

namespace nlmbench {

void validate_params(const FilterParams& params) {
    if (params.patch_side < 1 || params.patch_side % 2 == 0) {
        throw InvalidArgument("patch side must be odd and >= 1");
    }
    if (!(params.h > 0.0)) {
        throw InvalidArgument("smoothing parameter h must be positive");
    }
    if (!(params.rho > 0.0)) {
        throw InvalidArgument("kernel std dev rho must be positive");
    }
    if (params.search_radius && *params.search_radius < 1) {
        throw InvalidArgument("search radius must be >= 1");
    }
    if (params.threads < 0) {
        throw InvalidArgument("thread count must be >= 0");
    }
}

SpatialKernel gaussian_kernel(int side, double rho) {
    if (side < 1 || side % 2 == 0) {
        throw InvalidArgument("kernel side must be odd and >= 1");
    }
    if (!(rho > 0.0)) {
        throw InvalidArgument("kernel std dev rho must be positive");
    }
    SpatialKernel kernel;
    kernel.side = side;
    kernel.values.resize(static_cast<std::size_t>(side) * side);
    const int radius = side / 2;
    const double inv_two_rho2 = 1.0 / (2.0 * rho * rho);
    double sum = 0.0;
    std::size_t k = 0;
    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc, ++k) {
            const double v = std::exp(-(dr * dr + dc * dc) * inv_two_rho2);
            kernel.values[k] = v;
            sum += v;
        }
    }
    for (double& v : kernel.values) v /= sum;
    return kernel;
}

double patch_distance(const Patch& p, const Patch& q, const SpatialKernel& kernel) {
    if (p.side != q.side || p.side != kernel.side) {
        throw DimensionMismatch("patch/kernel side mismatch");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const double diff = p.values[k] - q.values[k];
        d += kernel.values[k] * diff * diff;
    }
    return d;
}

namespace {

struct NlmContext {
    detail::PaddedImage padded;
    SpatialKernel kernel;

    NlmContext(const Image& img, const FilterParams& params)
        : padded(detail::make_padded(img, params.patch_side / 2)),
          kernel(gaussian_kernel(params.patch_side, params.rho)) {}

    detail::NlmDistanceOp distance() const {
        return {&padded, kernel.values.data(), kernel.side};
    }
};

}  // namespace

std::vector<PixelWeight> nlm_weights(const Image& img, int row, int col,
                                     const FilterParams& params) {
    validate_params(params);
    const NlmContext ctx(img, params);
    return detail::pixel_weights(img, row, col, params, ctx.distance());
}

Image nlm_filter(const Image& img, const FilterParams& params) {
    validate_params(params);
    const NlmContext ctx(img, params);
    return detail::filter_image(img, params, ctx.distance());
}

}  // namespace nlmbench
