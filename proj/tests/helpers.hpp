#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "pulse/population.hpp"
#include "pulse/series.hpp"

namespace testutil {

// Naive O(n*alpha) oracles, independent of the prefix-sum implementation.

inline std::vector<double> naive_moving_sums(const std::vector<double>& x, int alpha) {
    std::vector<double> out(x.size() - alpha + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < alpha; ++j) s += x[i + j];
        out[i] = s;
    }
    return out;
}

inline std::vector<double> naive_mean_diff(const std::vector<double>& x, int alpha) {
    const std::vector<double> s = naive_moving_sums(x, alpha);
    std::vector<double> d(x.size() - 2 * alpha + 1);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (s[i] - s[i + alpha]) / alpha;
    return d;
}

// Two-pass per-window variance about the global mean.
inline std::vector<double> naive_variance_diff(const std::vector<double>& x, int alpha) {
    double xbar = 0.0;
    for (double v : x) xbar += v;
    xbar /= static_cast<double>(x.size());
    std::vector<double> sd(x.size() - alpha + 1);
    for (std::size_t i = 0; i < sd.size(); ++i) {
        double ss = 0.0;
        for (int j = 0; j < alpha; ++j) {
            const double c = x[i + j] - xbar;
            ss += c * c;
        }
        sd[i] = std::sqrt(ss / alpha);
    }
    std::vector<double> d(x.size() - 2 * alpha + 1);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = sd[i] - sd[i + alpha];
    return d;
}

inline std::vector<double> naive_double_average(const std::vector<double>& d, int alpha) {
    std::vector<double> out(d.size() - alpha + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < alpha; ++j) s += d[i + j];
        out[i] = s / alpha;
    }
    return out;
}

// A single noiseless step of height `beta` whose new level starts at 1-based
// index z.
inline std::vector<double> step_series(std::size_t n, int z, double beta) {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = static_cast<std::size_t>(z); i <= n; ++i) x[i - 1] = beta;
    return x;
}

inline pulse::PiecewiseSignal cp_signal() {
    pulse::PiecewiseSignal s;
    s.n = 2048;
    s.boundaries = {161, 323, 485, 638, 801, 967, 1132, 1299, 1465, 1632, 1794};
    s.levels = {1, 3, 2, -1, 1, 3, 2, 5, 1, -2, 3, 0};
    s.target = pulse::Target::mean;
    return s;
}

inline std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> g(0.0, sd);
    std::vector<double> x(n);
    for (double& v : x) v = g(rng);
    return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

}  // namespace testutil
