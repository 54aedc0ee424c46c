#pragma once

#include <string>

#include "nlmbench/image.hpp"

namespace nlmbench {

/// Root mean squared pixel difference, in gray levels.
double rmse(const Image& a, const Image& b);

/// Mean structural similarity index. Local means, variances and covariance
/// are taken under an 11x11 Gaussian window (sigma 1.5); at borders the
/// window is clipped to the image and renormalized. Stabilizing constants:
/// c1 = (0.01*255)^2, c2 = (0.03*255)^2. Both dimensions must be >= 11.
double ssim(const Image& a, const Image& b);

/// Quality record for one (image, noise level, filter) run. params_digest is
/// a human-readable capture of every knob needed to reproduce the run.
struct MetricReport {
    std::string image_id;
    double noise_level = 0.0;
    std::string filter_id;
    double rmse = 0.0;
    double ssim = 0.0;
    std::string params_digest;
};

}  // namespace nlmbench
