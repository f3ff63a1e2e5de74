#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "pulse/criterion.hpp"
#include "pulse/curves.hpp"

using namespace pulse;
using namespace testutil;

TEST_CASE("moving sums on small inputs") {
    CHECK(moving_sums(Series({1, 2, 3, 4}), 2) == std::vector<double>{3, 5, 7});
    const double c = 2.5;
    CHECK(moving_sums(Series({c, c, c, c, c}), 3) == std::vector<double>{3 * c, 3 * c, 3 * c});
}

TEST_CASE("moving sums equal the naive double loop") {
    std::mt19937_64 rng(11);
    const std::vector<double> x = random_series(rng, 200);
    const std::vector<double> got = moving_sums(Series(x), 17);
    CHECK(max_rel_diff(got, naive_moving_sums(x, 17)) < 1e-12);
}

TEST_CASE("moving sums rejects bad windows and bad data") {
    CHECK_THROWS_AS(moving_sums(Series({1, 2, 3}), 4), invalid_window_error);
    CHECK_THROWS_AS(Series({1.0, std::nan(""), 2.0}), invalid_data_error);
    CHECK_THROWS_AS(Series({1.0, std::numeric_limits<double>::infinity()}), invalid_data_error);
}

TEST_CASE("mean difference curve hand example") {
    const Series x({0, 0, 0, 0, 1, 1, 1, 1});
    const std::vector<double> d = mean_difference_curve(x, 2);
    CHECK(d == std::vector<double>{0, -0.5, -1, -0.5, 0});
    double peak = 0.0;
    for (double v : d) peak = std::max(peak, std::abs(v));
    CHECK(peak == 1.0);  // equals the jump height
}

TEST_CASE("mean difference curve is zero on constant input and shift invariant") {
    // Exactly representable constant: the windowed sums cancel bit-for-bit.
    const std::vector<double> zeros = mean_difference_curve(Series(std::vector<double>(64, 3.5)), 8);
    for (double v : zeros) CHECK(v == 0.0);
    const std::vector<double> near = mean_difference_curve(Series(std::vector<double>(64, 3.7)), 8);
    for (double v : near) CHECK(std::abs(v) < 1e-12);

    std::mt19937_64 rng(5);
    std::vector<double> x = random_series(rng, 120);
    std::vector<double> shifted = x;
    for (double& v : shifted) v += 10.0;
    const std::vector<double> a = mean_difference_curve(Series(x), 10);
    const std::vector<double> b = mean_difference_curve(Series(shifted), 10);
    CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("mean difference curve window validation") {
    CHECK_THROWS_AS(mean_difference_curve(Series(std::vector<double>(7, 0.0)), 4),
                    invalid_window_error);
}

TEST_CASE("variance difference curve") {
    SUBCASE("constant series gives zeros") {
        const std::vector<double> d =
            variance_difference_curve(Series(std::vector<double>(80, 4.0)), 8);
        for (double v : d) CHECK(v == 0.0);
    }
    SUBCASE("location invariance") {
        std::mt19937_64 rng(7);
        std::vector<double> x = random_series(rng, 150, 2.0);
        std::vector<double> shifted = x;
        for (double& v : shifted) v += 7.0;
        CHECK(max_abs_diff(variance_difference_curve(Series(x), 12),
                           variance_difference_curve(Series(shifted), 12)) < 1e-10);
    }
    SUBCASE("matches the naive two-pass oracle") {
        std::mt19937_64 rng(13);
        const std::vector<double> x = random_series(rng, 300, 1.5);
        CHECK(max_abs_diff(variance_difference_curve(Series(x), 20), naive_variance_diff(x, 20)) <
              1e-10);
    }
}

TEST_CASE("double average") {
    const std::vector<double> d{0, -0.5, -1, -0.5, 0};
    CHECK(double_average(d, 2) == std::vector<double>{-0.25, -0.75, -0.75, -0.25});

    const std::vector<double> z(10, 0.0);
    for (double v : double_average(z, 3)) CHECK(v == 0.0);

    CHECK_THROWS_AS(double_average(std::vector<double>{1, 2}, 3), invalid_window_error);
}

TEST_CASE("double average peak of a noiseless step is 3/4 of the jump") {
    // beta = 1, alpha = 2 on a step long enough for clean flanks.
    const std::vector<double> x = step_series(24, 13, 1.0);
    const std::vector<double> dt = double_average(mean_difference_curve(Series(x), 2), 2);
    double peak = 0.0;
    for (double v : dt) peak = std::max(peak, std::abs(v));
    CHECK(peak == 0.75);
}

TEST_CASE("ridge ratio curve") {
    SUBCASE("flat dtilde gives all ones") {
        const std::vector<double> z(20, 0.0);
        for (double v : ridge_ratio_curve(z, 4, 0.3)) CHECK(v == 1.0);
    }
    SUBCASE("noiseless step: extremes and their locations") {
        const int alpha = 8;
        const int z = 97;
        const double beta = 1.0, c = 0.1;
        const std::vector<double> x = step_series(192, z, beta);
        const std::vector<double> dt = double_average(mean_difference_curve(Series(x), alpha), alpha);
        const std::vector<double> t = ridge_ratio_curve(dt, alpha, c);
        double tmin = t[0], tmax = t[0];
        std::size_t imin = 0, imax = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < tmin) { tmin = t[i]; imin = i; }
            if (t[i] > tmax) { tmax = t[i]; imax = i; }
        }
        CHECK(tmin == doctest::Approx(c / (0.75 * beta + c)).epsilon(1e-12));
        CHECK(tmax == doctest::Approx((0.75 * beta + c) / c).epsilon(1e-12));
        // Dip at z - 3*alpha in the data-forced indexing; the display's
        // z - 2*alpha sits one window to the right.
        CHECK(static_cast<int>(imin) + 1 == z - 3 * alpha);
        CHECK(static_cast<int>(imax) - static_cast<int>(imin) == 3 * alpha / 2);
    }
    SUBCASE("joint scaling of dtilde and ridge leaves T unchanged") {
        std::mt19937_64 rng(3);
        std::vector<double> dt = random_series(rng, 60);
        std::vector<double> scaled = dt;
        const double lambda = 37.5;
        for (double& v : scaled) v *= lambda;
        CHECK(max_abs_diff(ridge_ratio_curve(dt, 6, 0.2), ridge_ratio_curve(scaled, 6, 0.2 * lambda)) <
              1e-12);
    }
    SUBCASE("validation") {
        const std::vector<double> z(20, 0.0);
        CHECK_THROWS_AS(ridge_ratio_curve(z, 4, 0.0), invalid_ridge_error);
        CHECK_THROWS_AS(ridge_ratio_curve(z, 4, -1.0), invalid_ridge_error);
        CHECK_THROWS_AS(ridge_ratio_curve(z, 5, 0.1), invalid_window_error);
        CHECK_THROWS_AS(ridge_ratio_curve(std::vector<double>(6, 0.0), 4, 0.1),
                        invalid_window_error);
    }
}

TEST_CASE("pulse curve length contracts over an (n, alpha) grid") {
    std::mt19937_64 rng(2024);
    for (int alpha : {4, 6, 10, 16}) {
        for (std::size_t n : {static_cast<std::size_t>(9 * alpha / 2),
                              static_cast<std::size_t>(9 * alpha / 2 + 5),
                              static_cast<std::size_t>(40 * alpha)}) {
            DetectorConfig cfg;
            cfg.alpha = alpha;
            cfg.ridge = 0.25;
            const PulseCurve curve = pulse_curve(Series(random_series(rng, n)), cfg);
            CHECK(curve.d.size() == n - 2 * alpha + 1);
            CHECK(curve.dtilde.size() == n - 3 * alpha + 2);
            CHECK(curve.t.size() == n - 3 * alpha + 2 - 3 * alpha / 2);
            for (double v : curve.t) CHECK(v > 0.0);
        }
    }
}

TEST_CASE("pulse curve on a constant series is identically one") {
    DetectorConfig cfg;
    cfg.alpha = 6;
    cfg.ridge = 0.4;
    const PulseCurve curve = pulse_curve(Series(std::vector<double>(100, 2.0)), cfg);
    for (double v : curve.t) CHECK(v == 1.0);
}

TEST_CASE("pulse curve reports the minimal feasible length") {
    DetectorConfig cfg;
    cfg.alpha = 8;
    cfg.ridge = 0.3;
    CHECK_THROWS_WITH_AS(pulse_curve(Series(std::vector<double>(35, 0.0)), cfg),
                         doctest::Contains("need n >= 36"), invalid_window_error);
}

TEST_CASE("noiseless blocks signal has exactly 11 sub-threshold runs") {
    const PiecewiseSignal sig = cp_signal();
    DetectorConfig cfg;
    cfg.alpha = 32;
    cfg.ridge = 0.4882;
    const PulseCurve curve = pulse_curve(Series(sig.expand()), cfg);
    CHECK(threshold_intervals(curve.t, 0.5).size() == 11);
}

TEST_CASE("mean curves: shift invariance of the full pulse curve") {
    std::mt19937_64 rng(77);
    std::vector<double> x = random_series(rng, 200);
    std::vector<double> shifted = x;
    for (double& v : shifted) v += 1000.0;
    DetectorConfig cfg;
    cfg.alpha = 8;
    cfg.ridge = 0.2;
    const PulseCurve a = pulse_curve(Series(x), cfg);
    const PulseCurve b = pulse_curve(Series(shifted), cfg);
    CHECK(max_abs_diff(a.d, b.d) < 1e-9);
    CHECK(max_abs_diff(a.t, b.t) < 1e-9);
}

TEST_CASE("mean curves are degree-1 homogeneous; T invariant under joint scaling") {
    std::mt19937_64 rng(78);
    std::vector<double> x = random_series(rng, 150);
    std::vector<double> scaled = x;
    const double lambda = 4.0;
    for (double& v : scaled) v *= lambda;
    DetectorConfig a_cfg;
    a_cfg.alpha = 6;
    a_cfg.ridge = 0.3;
    DetectorConfig b_cfg = a_cfg;
    b_cfg.ridge = 0.3 * lambda;
    const PulseCurve a = pulse_curve(Series(x), a_cfg);
    const PulseCurve b = pulse_curve(Series(scaled), b_cfg);
    std::vector<double> d_scaled = a.d;
    for (double& v : d_scaled) v *= lambda;
    CHECK(max_abs_diff(d_scaled, b.d) < 1e-10);
    CHECK(max_abs_diff(a.t, b.t) < 1e-10);
}

TEST_CASE("prefix-sum curves equal naive curves on random inputs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        std::uniform_int_distribution<int> nd(60, 500);
        const std::size_t n = static_cast<std::size_t>(nd(rng));
        std::uniform_int_distribution<int> ad(2, std::min<int>(40, static_cast<int>(n) / 5));
        int alpha = ad(rng);
        alpha -= alpha % 2;
        alpha = std::max(alpha, 2);
        const std::vector<double> x = random_series(rng, n, 3.0);
        CHECK(max_rel_diff(mean_difference_curve(Series(x), alpha), naive_mean_diff(x, alpha)) <
              1e-10);
        const std::vector<double> d = naive_mean_diff(x, alpha);
        CHECK(max_rel_diff(double_average(d, alpha), naive_double_average(d, alpha)) < 1e-10);
    }
}
