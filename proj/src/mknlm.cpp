#include "nlmbench/mknlm.hpp"

#include <cmath>

#include "filter_engine.hpp"

namespace nlmbench {

IntraPatchWeights intra_patch_weights(const Patch& p) {
    IntraPatchWeights w;
    w.side = p.side;
    w.values.resize(p.values.size());
    detail::intra_weights_from_values(p.values.data(), static_cast<int>(p.values.size()),
                                      w.values.data());
    return w;
}

double mk_distance(const Patch& p, const Patch& q, const IntraPatchWeights& wp,
                   const IntraPatchWeights& wq, const SpatialKernel& kernel) {
    if (p.side != q.side || p.side != kernel.side || wp.side != p.side ||
        wq.side != p.side) {
        throw DimensionMismatch("patch/weights/kernel side mismatch");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < p.values.size(); ++k) {
        const double diff = wp.values[k] * p.values[k] - wq.values[k] * q.values[k];
        num += kernel.values[k] * diff * diff;
        den += wp.values[k] * wq.values[k];
    }
    if (!(den > 0.0)) {
        // Unreachable while intra-patch weights stay in (0,1].
        throw InvalidArgument("degenerate modified-kernel denominator");
    }
    return num / den;
}

namespace {

// Per-pixel caches for the modified kernel: the intra-patch weight vector and
// the elementwise weighted patch values, both in patch scan order. Computed
// once per pixel and reused for every pairing involving that pixel.
struct MkContext {
    SpatialKernel kernel;
    int nn = 0;
    std::vector<double> weights;
    std::vector<double> weighted_values;
    int image_width = 0;

    MkContext(const Image& img, const FilterParams& params)
        : kernel(gaussian_kernel(params.patch_side, params.rho)),
          nn(params.patch_side * params.patch_side),
          image_width(img.width()) {
        const int radius = params.patch_side / 2;
        const detail::PaddedImage padded = detail::make_padded(img, radius);
        const std::size_t npixels = img.size();
        weights.resize(npixels * nn);
        weighted_values.resize(npixels * nn);
        std::vector<double> patch(nn);
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c) {
                std::size_t k = 0;
                for (int dr = 0; dr < params.patch_side; ++dr) {
                    const double* row = padded.values.data() +
                                        static_cast<std::size_t>(r + dr) * padded.stride + c;
                    for (int dc = 0; dc < params.patch_side; ++dc) patch[k++] = row[dc];
                }
                const std::size_t base = (static_cast<std::size_t>(r) * img.width() + c) * nn;
                detail::intra_weights_from_values(patch.data(), nn, &weights[base]);
                for (int i = 0; i < nn; ++i) {
                    weighted_values[base + i] = weights[base + i] * patch[i];
                }
            }
        }
    }

    detail::MkDistanceOp distance() const {
        return {weights.data(), weighted_values.data(), kernel.values.data(), nn,
                image_width};
    }
};

}  // namespace

std::vector<PixelWeight> mk_nlm_weights(const Image& img, int row, int col,
                                        const FilterParams& params) {
    validate_params(params);
    const MkContext ctx(img, params);
    return detail::pixel_weights(img, row, col, params, ctx.distance());
}

Image mk_nlm_filter(const Image& img, const FilterParams& params) {
    validate_params(params);
    const MkContext ctx(img, params);
    return detail::filter_image(img, params, ctx.distance());
}

}  // namespace nlmbench
