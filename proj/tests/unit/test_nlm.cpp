#include <cmath>
#include <map>
#include <random>
#include <utility>

#include "doctest.h"
#include "helpers.hpp"
#include "nlmbench/errors.hpp"
#include "nlmbench/nlm.hpp"
#include "nlmbench/noise.hpp"

using namespace nlmbench;
using testutil::make_image;
using testutil::random_image;

namespace {

std::map<std::pair<int, int>, double> weight_map(const std::vector<PixelWeight>& ws) {
    std::map<std::pair<int, int>, double> m;
    for (const auto& w : ws) m[{w.row, w.col}] = w.weight;
    return m;
}

double weight_sum(const std::vector<PixelWeight>& ws) {
    double s = 0.0;
    for (const auto& w : ws) s += w.weight;
    return s;
}

}  // namespace

TEST_CASE("parameter validation") {
    FilterParams p;
    CHECK_NOTHROW(validate_params(p));

    FilterParams bad = p;
    bad.patch_side = 4;
    CHECK_THROWS_AS(validate_params(bad), InvalidArgument);
    bad = p;
    bad.h = 0.0;
    CHECK_THROWS_AS(validate_params(bad), InvalidArgument);
    bad = p;
    bad.rho = -1.0;
    CHECK_THROWS_AS(validate_params(bad), InvalidArgument);
    bad = p;
    bad.search_radius = 0;
    CHECK_THROWS_AS(validate_params(bad), InvalidArgument);
    bad = p;
    bad.threads = -2;
    CHECK_THROWS_AS(validate_params(bad), InvalidArgument);
    bad = p;
    bad.search_radius.reset();  // full-image search is legal
    CHECK_NOTHROW(validate_params(bad));
}

TEST_CASE("gaussian kernel values and structure") {
    SUBCASE("side 1 is the identity weight") {
        const SpatialKernel k = gaussian_kernel(1, 1.0);
        REQUIRE(k.values.size() == 1);
        CHECK(k.values[0] == doctest::Approx(1.0));
    }

    SUBCASE("3x3, rho 1: hand-computed entries") {
        // Unnormalized: 1 at the center, e^-0.5 at the edges, e^-1 at the
        // corners; normalizer 1 + 4 e^-0.5 + 4 e^-1 = 4.8976404.
        const SpatialKernel k = gaussian_kernel(3, 1.0);
        CHECK(k.values[4] == doctest::Approx(0.2041800).epsilon(1e-6));
        CHECK(k.values[1] == doctest::Approx(0.1238414).epsilon(1e-6));
        CHECK(k.values[0] == doctest::Approx(0.0751137).epsilon(1e-6));
    }

    SUBCASE("normalization and symmetry for many shapes") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> rho_dist(0.3, 4.0);
        for (int iter = 0; iter < 200; ++iter) {
            const int side = 1 + 2 * (iter % 5);
            const double rho = rho_dist(rng);
            const SpatialKernel k = gaussian_kernel(side, rho);
            double sum = 0.0;
            for (double v : k.values) {
                CHECK(v > 0.0);
                sum += v;
            }
            REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
            // Radial symmetry: value depends only on the offset length.
            const int n = side;
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    REQUIRE(k.values[r * n + c] ==
                            doctest::Approx(k.values[c * n + r]).epsilon(1e-12));
                    REQUIRE(k.values[r * n + c] ==
                            doctest::Approx(k.values[(n - 1 - r) * n + c]).epsilon(1e-12));
                }
            }
        }
    }

    SUBCASE("invalid shapes throw") {
        CHECK_THROWS_AS(gaussian_kernel(2, 1.0), InvalidArgument);
        CHECK_THROWS_AS(gaussian_kernel(3, 0.0), InvalidArgument);
    }
}

TEST_CASE("patch distance oracles") {
    const SpatialKernel k3 = gaussian_kernel(3, 1.0);

    SUBCASE("identical patches have zero distance") {
        const Image img = make_image(5, 5, [](int r, int c) { return r * 31.0 + c * 7.0; });
        const Patch p = extract_patch(img, 2, 2, 3);
        CHECK(patch_distance(p, p, k3) == 0.0);
    }

    SUBCASE("single-pixel patches reduce to the squared difference") {
        const SpatialKernel k1 = gaussian_kernel(1, 1.0);
        Patch a{1, 0, 0, {10.0}};
        Patch b{1, 0, 0, {14.0}};
        CHECK(patch_distance(a, b, k1) == doctest::Approx(16.0));
    }

    SUBCASE("constant offset gives the squared offset") {
        // The kernel sums to one, so a uniform difference of c scores c^2.
        std::mt19937_64 rng(21);
        for (int iter = 0; iter < 200; ++iter) {
            const Image img = random_image(rng, 7, 7);
            const Patch p = extract_patch(img, 3, 3, 3);
            Patch q = p;
            const double c = std::uniform_real_distribution<double>(-80, 80)(rng);
            for (double& v : q.values) v += c;
            CHECK(patch_distance(p, q, k3) == doctest::Approx(c * c).epsilon(1e-9));
        }
    }

    SUBCASE("distance is symmetric") {
        std::mt19937_64 rng(22);
        for (int iter = 0; iter < 200; ++iter) {
            const Image img = random_image(rng, 9, 9);
            const Patch p = extract_patch(img, 4, 4, 3);
            const Patch q = extract_patch(img, 2, 6, 3);
            REQUIRE(patch_distance(p, q, k3) == patch_distance(q, p, k3));
        }
    }

    SUBCASE("side mismatch throws") {
        Patch a{3, 0, 0, std::vector<double>(9, 1.0)};
        Patch b{1, 0, 0, {1.0}};
        CHECK_THROWS_AS(patch_distance(a, b, k3), DimensionMismatch);
        CHECK_THROWS_AS(patch_distance(a, a, gaussian_kernel(5, 1.0)), DimensionMismatch);
    }
}

TEST_CASE("weights on a constant image are uniform over the window") {
    const Image img(12, 12, 77.0);
    FilterParams params;
    params.search_radius = 3;
    const auto ws = nlm_weights(img, 5, 5, params);
    REQUIRE(ws.size() == 49);
    for (const auto& w : ws) {
        CHECK(w.weight == doctest::Approx(1.0 / 49.0).epsilon(1e-12));
    }
    CHECK(weight_sum(ws) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("window clips at the borders") {
    const Image img(10, 8, 3.0);
    FilterParams params;
    params.search_radius = 2;
    const auto corner = nlm_weights(img, 0, 0, params);
    CHECK(corner.size() == 9);  // 3x3 window survives the clip
    const auto edge = nlm_weights(img, 0, 4, params);
    CHECK(edge.size() == 15);  // 3 rows x 5 cols
    const auto inner = nlm_weights(img, 4, 4, params);
    CHECK(inner.size() == 25);
    CHECK_THROWS_AS(nlm_weights(img, 8, 0, FilterParams{}), InvalidArgument);
}

TEST_CASE("weights match the brute-force patch API path") {
    std::mt19937_64 rng(33);
    FilterParams params;
    params.search_radius = 3;
    params.h = 30.0;
    for (int iter = 0; iter < 40; ++iter) {
        const Image img = random_image(rng, 11, 9);
        const int row = std::uniform_int_distribution<int>(0, 8)(rng);
        const int col = std::uniform_int_distribution<int>(0, 10)(rng);
        const auto fast = nlm_weights(img, row, col, params);
        const auto slow = testutil::brute_nlm_weights(img, row, col, params);
        REQUIRE(fast.size() == slow.size());
        const auto fm = weight_map(fast), sm = weight_map(slow);
        for (const auto& [pos, w] : sm) {
            REQUIRE(fm.count(pos) == 1);
            REQUIRE(fm.at(pos) == doctest::Approx(w).epsilon(1e-12));
        }
    }
}

TEST_CASE("weights sum to one on random inputs") {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 200; ++iter) {
        const Image img = random_image(rng, 10, 10);
        FilterParams params;
        params.search_radius = 2 + iter % 3;
        params.h = 5.0 + (iter % 7) * 10.0;
        params.center_weight =
            (iter % 2) ? CenterWeight::max_of_others : CenterWeight::literal;
        const int row = std::uniform_int_distribution<int>(0, 9)(rng);
        const int col = std::uniform_int_distribution<int>(0, 9)(rng);
        const auto ws = nlm_weights(img, row, col, params);
        REQUIRE(weight_sum(ws) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("center-weight policies") {
    std::mt19937_64 rng(55);
    const Image img = random_image(rng, 9, 9);
    FilterParams params;
    params.search_radius = 2;
    params.h = 20.0;

    SUBCASE("literal keeps exp(0)=1, the strict maximum on generic data") {
        const auto ws = nlm_weights(img, 4, 4, params);
        const auto m = weight_map(ws);
        const double self = m.at({4, 4});
        for (const auto& [pos, w] : m) {
            if (pos != std::make_pair(4, 4)) CHECK(self > w);
        }
    }

    SUBCASE("max_of_others replaces the self weight with the runner-up") {
        params.center_weight = CenterWeight::max_of_others;
        const auto ws = nlm_weights(img, 4, 4, params);
        const auto m = weight_map(ws);
        double best_other = 0.0;
        for (const auto& [pos, w] : m) {
            if (pos != std::make_pair(4, 4)) best_other = std::max(best_other, w);
        }
        CHECK(m.at({4, 4}) == doctest::Approx(best_other).epsilon(1e-12));
    }
}

TEST_CASE("constant images filter to themselves") {
    const Image img(16, 16, 201.0);
    FilterParams params;
    params.search_radius = 4;
    const Image out = nlm_filter(img, params);
    for (double v : out.data()) CHECK(v == doctest::Approx(201.0).epsilon(1e-12));
}

TEST_CASE("outputs stay inside the input range") {
    std::mt19937_64 rng(66);
    for (int iter = 0; iter < 200; ++iter) {
        const Image img = random_image(rng, 8, 8, -40.0, 300.0);
        double lo = 1e300, hi = -1e300;
        for (double v : img.data()) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        FilterParams params;
        params.search_radius = 2;
        params.h = 10.0 + (iter % 5) * 25.0;
        const Image out = nlm_filter(img, params);
        for (double v : out.data()) {
            REQUIRE(v >= lo - 1e-9);
            REQUIRE(v <= hi + 1e-9);
        }
    }
}

TEST_CASE("huge h degenerates to the window mean") {
    std::mt19937_64 rng(77);
    const Image img = random_image(rng, 12, 12);
    FilterParams params;
    params.search_radius = 3;
    params.h = 1e8;
    const Image out = nlm_filter(img, params);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const auto wb = testutil::window_bounds(img, r, c, params);
            double sum = 0.0;
            int n = 0;
            for (int rr = wb.r0; rr <= wb.r1; ++rr) {
                for (int cc = wb.c0; cc <= wb.c1; ++cc) {
                    sum += img.at(rr, cc);
                    ++n;
                }
            }
            REQUIRE(out.at(r, c) == doctest::Approx(sum / n).epsilon(1e-6));
        }
    }
}

TEST_CASE("covering search radius equals full-image search") {
    std::mt19937_64 rng(88);
    const Image img = random_image(rng, 16, 16);
    FilterParams windowed;
    windowed.search_radius = 16;
    windowed.h = 25.0;
    FilterParams full = windowed;
    full.search_radius.reset();

    const Image a = nlm_filter(img, windowed);
    const Image b = nlm_filter(img, full);
    CHECK(testutil::max_abs_diff(a, b) <= 1e-12);
}

TEST_CASE("filter output is the weight-weighted average, exactly") {
    std::mt19937_64 rng(99);
    const Image img = random_image(rng, 10, 10);
    FilterParams params;
    params.search_radius = 3;
    params.h = 18.0;
    const Image out = nlm_filter(img, params);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const auto ws = nlm_weights(img, r, c, params);
            double acc = 0.0;
            for (const auto& w : ws) acc += w.weight * img.at(w.row, w.col);
            REQUIRE(out.at(r, c) == doctest::Approx(acc).epsilon(1e-12));
        }
    }
}

TEST_CASE("transpose consistency") {
    std::mt19937_64 rng(111);
    const Image img = random_image(rng, 14, 10);
    Image timg(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) timg.at(c, r) = img.at(r, c);
    }
    FilterParams params;
    params.search_radius = 4;
    params.h = 22.0;
    const Image out = nlm_filter(img, params);
    const Image tout = nlm_filter(timg, params);
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            REQUIRE(out.at(r, c) == doctest::Approx(tout.at(c, r)).epsilon(1e-9));
        }
    }
}

TEST_CASE("thread count does not change the output bits") {
    std::mt19937_64 rng(222);
    const Image img = random_image(rng, 20, 15);
    FilterParams params;
    params.search_radius = 3;
    params.h = 15.0;
    params.threads = 1;
    const Image serial = nlm_filter(img, params);
    params.threads = 3;
    const Image parallel = nlm_filter(img, params);
    CHECK(serial.data() == parallel.data());
}

TEST_CASE("filtering pulls a noisy image toward the clean one") {
    const Image clean = make_image(40, 40, [](int r, int c) {
        return (r / 10 + c / 10) % 2 ? 180.0 : 70.0;
    });
    const Image noisy = add_gaussian_noise(clean, {0.10, 17});
    FilterParams params;
    params.search_radius = 7;
    params.h = 0.75 * 25.5;
    const Image out = nlm_filter(noisy, params);

    auto rms = [](const Image& a, const Image& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double d = a.data()[i] - b.data()[i];
            s += d * d;
        }
        return std::sqrt(s / a.size());
    };
    CHECK(rms(out, clean) < rms(noisy, clean));
}
