#pragma once

// Shared plumbing for the unit tests: small image builders, a scratch
// directory that cleans up after itself, and brute-force weight oracles
// computed through the public patch API so the optimized filter loops can be
// checked against an independent path.

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nlmbench/image.hpp"
#include "nlmbench/mknlm.hpp"
#include "nlmbench/nlm.hpp"

namespace testutil {

inline nlmbench::Image make_image(int width, int height,
                                  const std::function<double(int, int)>& fn) {
    nlmbench::Image img(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            img.at(r, c) = fn(r, c);
        }
    }
    return img;
}

inline nlmbench::Image random_image(std::mt19937_64& rng, int width, int height,
                                    double lo = 0.0, double hi = 255.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return make_image(width, height, [&](int, int) { return dist(rng); });
}

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::uint64_t counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("nlmbench_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

struct WindowBounds {
    int r0, r1, c0, c1;  // inclusive
};

inline WindowBounds window_bounds(const nlmbench::Image& img, int row, int col,
                                  const nlmbench::FilterParams& params) {
    if (!params.search_radius) {
        return {0, img.height() - 1, 0, img.width() - 1};
    }
    const int rad = *params.search_radius;
    return {std::max(0, row - rad), std::min(img.height() - 1, row + rad),
            std::max(0, col - rad), std::min(img.width() - 1, col + rad)};
}

/// Reference NLM weights computed with extract_patch + patch_distance, i.e.
/// without the padded-image fast path used by the library internals.
inline std::vector<nlmbench::PixelWeight> brute_nlm_weights(
    const nlmbench::Image& img, int row, int col, const nlmbench::FilterParams& params) {
    using namespace nlmbench;
    const SpatialKernel kernel = gaussian_kernel(params.patch_side, params.rho);
    const Patch target = extract_patch(img, row, col, params.patch_side);
    const WindowBounds wb = window_bounds(img, row, col, params);
    const double inv_h2 = 1.0 / (params.h * params.h);

    std::vector<PixelWeight> out;
    double total = 0.0;
    std::size_t self = 0;
    for (int r = wb.r0; r <= wb.r1; ++r) {
        for (int c = wb.c0; c <= wb.c1; ++c) {
            const Patch cand = extract_patch(img, r, c, params.patch_side);
            const double d = patch_distance(target, cand, kernel);
            if (r == row && c == col) self = out.size();
            out.push_back({r, c, std::exp(-d * inv_h2)});
        }
    }
    if (params.center_weight == CenterWeight::max_of_others && out.size() > 1) {
        double m = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (k != self) m = std::max(m, out[k].weight);
        }
        out[self].weight = m;
    }
    for (const auto& pw : out) total += pw.weight;
    for (auto& pw : out) pw.weight /= total;
    return out;
}

/// Reference modified-kernel weights via the public intra_patch_weights and
/// mk_distance functions.
inline std::vector<nlmbench::PixelWeight> brute_mk_weights(
    const nlmbench::Image& img, int row, int col, const nlmbench::FilterParams& params) {
    using namespace nlmbench;
    const SpatialKernel kernel = gaussian_kernel(params.patch_side, params.rho);
    const Patch target = extract_patch(img, row, col, params.patch_side);
    const IntraPatchWeights wt = intra_patch_weights(target);
    const WindowBounds wb = window_bounds(img, row, col, params);
    const double inv_h2 = 1.0 / (params.h * params.h);

    std::vector<PixelWeight> out;
    double total = 0.0;
    std::size_t self = 0;
    for (int r = wb.r0; r <= wb.r1; ++r) {
        for (int c = wb.c0; c <= wb.c1; ++c) {
            const Patch cand = extract_patch(img, r, c, params.patch_side);
            const IntraPatchWeights wc = intra_patch_weights(cand);
            const double d = mk_distance(target, cand, wt, wc, kernel);
            if (r == row && c == col) self = out.size();
            out.push_back({r, c, std::exp(-d * inv_h2)});
        }
    }
    if (params.center_weight == CenterWeight::max_of_others && out.size() > 1) {
        double m = 0.0;
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (k != self) m = std::max(m, out[k].weight);
        }
        out[self].weight = m;
    }
    for (const auto& pw : out) total += pw.weight;
    for (auto& pw : out) pw.weight /= total;
    return out;
}

inline double max_abs_diff(const nlmbench::Image& a, const nlmbench::Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    }
    return m;
}

}  // namespace testutil
