#pragma once

// Internal machinery shared by the plain and modified-kernel filters: mirror
// padding, search windows, the raw-weight pass and the row-parallel driver.
// Both filters must stay bit-identical to the public per-pixel weight
// functions, so everything here accumulates in fixed row-major order.

#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "nlmbench/image.hpp"
#include "nlmbench/nlm.hpp"

namespace nlmbench::detail {

// Mirror-padded copy of an image. Source pixel (r, c) lives at padded
// (r + pad, c + pad); the patch centered there starts at padded (r, c) when
// pad equals the patch radius.
struct PaddedImage {
    int pad = 0;
    int stride = 0;
    std::vector<double> values;
};

inline PaddedImage make_padded(const Image& img, int pad) {
    PaddedImage p;
    p.pad = pad;
    p.stride = img.width() + 2 * pad;
    const int ph = img.height() + 2 * pad;
    p.values.resize(static_cast<std::size_t>(p.stride) * ph);
    for (int r = 0; r < ph; ++r) {
        const int sr = mirror_index(r - pad, img.height());
        for (int c = 0; c < p.stride; ++c) {
            const int sc = mirror_index(c - pad, img.width());
            p.values[static_cast<std::size_t>(r) * p.stride + c] = img.at(sr, sc);
        }
    }
    return p;
}

struct SearchWindow {
    int r0 = 0, r1 = 0, c0 = 0, c1 = 0;  // inclusive
    int width() const { return c1 - c0 + 1; }
    int height() const { return r1 - r0 + 1; }
    std::size_t count() const { return static_cast<std::size_t>(width()) * height(); }
};

inline SearchWindow make_window(const Image& img, int row, int col,
                                const FilterParams& params) {
    SearchWindow w;
    if (params.search_radius) {
        const int R = *params.search_radius;
        w.r0 = std::max(0, row - R);
        w.r1 = std::min(img.height() - 1, row + R);
        w.c0 = std::max(0, col - R);
        w.c1 = std::min(img.width() - 1, col + R);
    } else {
        w.r0 = 0;
        w.r1 = img.height() - 1;
        w.c0 = 0;
        w.c1 = img.width() - 1;
    }
    return w;
}

// Fills `out` with exp(-d(p,q)/h^2) for every q in the window, row-major,
// then applies the center-weight policy. Weights are left unnormalized.
template <class DistFn>
void raw_weights(int row, int col, const FilterParams& params, const DistFn& dist,
                 const SearchWindow& win, std::vector<double>& out) {
    const double inv_h2 = 1.0 / (params.h * params.h);
    out.resize(win.count());
    std::size_t k = 0;
    for (int qr = win.r0; qr <= win.r1; ++qr) {
        for (int qc = win.c0; qc <= win.c1; ++qc) {
            out[k++] = std::exp(-dist(row, col, qr, qc) * inv_h2);
        }
    }
    if (params.center_weight == CenterWeight::max_of_others && out.size() > 1) {
        const std::size_t self =
            static_cast<std::size_t>(row - win.r0) * win.width() + (col - win.c0);
        double best = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (i != self && out[i] > best) best = out[i];
        }
        out[self] = best;
    }
}

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(thread_idx, row) for every row. Rows are striped across threads by
// index, so the row-to-thread assignment (and therefore any per-thread
// scratch use) does not depend on scheduling.
inline void parallel_rows(int rows, int threads,
                          const std::function<void(int, int)>& fn) {
    if (threads <= 1) {
        for (int r = 0; r < rows; ++r) fn(0, r);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (int r = t; r < rows; r += threads) fn(t, r);
        });
    }
    for (auto& th : pool) th.join();
}

// Shared filter driver. Every output pixel is the normalized weighted average
// of its search window; normalize-then-accumulate keeps the result exactly
// equal to dotting the public per-pixel weights with the window values.
template <class DistFn>
Image filter_image(const Image& img, const FilterParams& params, const DistFn& dist) {
    Image out(img.width(), img.height());
    const int threads = resolve_threads(params.threads);
    std::vector<std::vector<double>> scratch(threads);
    parallel_rows(img.height(), threads, [&](int t, int r) {
        std::vector<double>& buf = scratch[t];
        for (int c = 0; c < img.width(); ++c) {
            const SearchWindow win = make_window(img, r, c, params);
            raw_weights(r, c, params, dist, win, buf);
            double total = 0.0;
            for (double w : buf) total += w;
            double acc = 0.0;
            std::size_t k = 0;
            for (int qr = win.r0; qr <= win.r1; ++qr) {
                for (int qc = win.c0; qc <= win.c1; ++qc) {
                    acc += (buf[k++] / total) * img.at(qr, qc);
                }
            }
            out.at(r, c) = acc;
        }
    });
    return out;
}

// Normalized weights for one pixel, as exposed by the public weight APIs.
template <class DistFn>
std::vector<PixelWeight> pixel_weights(const Image& img, int row, int col,
                                       const FilterParams& params, const DistFn& dist) {
    if (row < 0 || row >= img.height() || col < 0 || col >= img.width()) {
        throw InvalidArgument("weight query pixel outside image bounds");
    }
    const SearchWindow win = make_window(img, row, col, params);
    std::vector<double> buf;
    raw_weights(row, col, params, dist, win, buf);
    double total = 0.0;
    for (double w : buf) total += w;
    std::vector<PixelWeight> result;
    result.reserve(buf.size());
    std::size_t k = 0;
    for (int qr = win.r0; qr <= win.r1; ++qr) {
        for (int qc = win.c0; qc <= win.c1; ++qc) {
            result.push_back({qr, qc, buf[k++] / total});
        }
    }
    return result;
}

// Gaussian-weighted squared difference between the patches centered at p and
// q, reading from the mirror-padded buffer.
struct NlmDistanceOp {
    const PaddedImage* padded = nullptr;
    const double* kernel = nullptr;
    int side = 0;

    double operator()(int pr, int pc, int qr, int qc) const {
        const double* base = padded->values.data();
        const int stride = padded->stride;
        double d = 0.0;
        std::size_t k = 0;
        for (int dr = 0; dr < side; ++dr) {
            const double* prow = base + static_cast<std::size_t>(pr + dr) * stride + pc;
            const double* qrow = base + static_cast<std::size_t>(qr + dr) * stride + qc;
            for (int dc = 0; dc < side; ++dc, ++k) {
                const double diff = prow[dc] - qrow[dc];
                d += kernel[k] * diff * diff;
            }
        }
        return d;
    }
};

// Modified-kernel distance reading per-pixel caches of the intra-patch
// weights and the weighted patch values.
struct MkDistanceOp {
    const double* weights = nullptr;          // image_width*image_height*nn
    const double* weighted_values = nullptr;  // elementwise weight * intensity
    const double* kernel = nullptr;
    int nn = 0;
    int image_width = 0;

    double operator()(int pr, int pc, int qr, int qc) const {
        const std::size_t pi =
            (static_cast<std::size_t>(pr) * image_width + pc) * nn;
        const std::size_t qi =
            (static_cast<std::size_t>(qr) * image_width + qc) * nn;
        double num = 0.0;
        double den = 0.0;
        for (int k = 0; k < nn; ++k) {
            const double diff = weighted_values[pi + k] - weighted_values[qi + k];
            num += kernel[k] * diff * diff;
            den += weights[pi + k] * weights[qi + k];
        }
        return num / den;
    }
};

// Inverse geometric-distance weight for each entry of a patch value buffer.
inline void intra_weights_from_values(const double* a, int n, double* w) {
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = a[i] - a[j];
            sum += d * d;
        }
        w[i] = 1.0 / (1.0 + std::sqrt(sum));
    }
}

}  // namespace nlmbench::detail
