#pragma once

#include <vector>

#include "nlmbench/image.hpp"
#include "nlmbench/nlm.hpp"

namespace nlmbench {

/// Per-pixel typicality weights inside one patch, same scan order as Patch.
/// Each value lies in (0,1]; intensity outliers get weights near zero.
struct IntraPatchWeights {
    int side = 0;
    std::vector<double> values;
};

/// weight_i = 1 / (1 + sqrt(sum_j (a_i - a_j)^2)) over all patch intensities
/// a_j. The j = i term contributes zero, so the sum runs over the whole patch.
IntraPatchWeights intra_patch_weights(const Patch& p);

/// Modified-kernel distance between two patches:
///   sum_k kernel[k] * (wp[k]*p[k] - wq[k]*q[k])^2  /  sum_k wp[k]*wq[k]
/// where wp, wq are the intra-patch weights of p and q. The elementwise
/// weighting suppresses outlier pixels before the patches are compared; the
/// denominator rescales for the shrinkage the weighting introduces.
double mk_distance(const Patch& p, const Patch& q, const IntraPatchWeights& wp,
                   const IntraPatchWeights& wq, const SpatialKernel& kernel);

/// Same contract as nlm_weights with mk_distance in place of patch_distance.
std::vector<PixelWeight> mk_nlm_weights(const Image& img, int row, int col,
                                        const FilterParams& params);

/// Modified-kernel non-local means: the NLM pipeline with mk_distance feeding
/// the exponential similarity weight. Intra-patch weights are computed once
/// per pixel in a prepass and reused for every pairing.
Image mk_nlm_filter(const Image& img, const FilterParams& params);

}  // namespace nlmbench
