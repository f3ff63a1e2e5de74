#pragma once

#include <span>
#include <vector>

#include "pulse/config.hpp"
#include "pulse/series.hpp"

namespace pulse {

// Index convention: all curves use the 1-based index i of their defining
// formulas; vector position p holds the value at i = p + 1.
//
//   d[i]      for i = 1 .. n - 2*alpha + 1
//   dtilde[i] for i = 1 .. n - 3*alpha + 2
//   t[i]      for i = 1 .. n - 3*alpha + 2 - 3*alpha/2
//
// The t range is forced by data availability: t(i) reads dtilde(i + 3*alpha/2).

/// Aligned moving-sum, double-average and ridge-ratio curves of one series.
struct PulseCurve {
    std::vector<double> d;
    std::vector<double> dtilde;
    std::vector<double> t;
    int alpha = 0;
    Target target = Target::mean;
};

/// Compensated prefix sums; out[k] = x_0 + ... + x_{k-1}, out[0] = 0.
std::vector<double> prefix_sums(std::span<const double> x);

/// Moving sums S(i) = sum_{j=i}^{i+alpha-1} x_j, i = 1 .. n-alpha+1. O(n).
std::vector<double> moving_sums(const Series& x, int alpha);

/// D(i) = (S(i) - S(i+alpha)) / alpha, i = 1 .. n-2*alpha+1.
std::vector<double> mean_difference_curve(const Series& x, int alpha);

/// Windowed standard-deviation differences about the global mean:
/// D(i) = sqrt(sigma2(i)) - sqrt(sigma2(i+alpha)) with
/// sigma2(i) = (1/alpha) * sum_{t=i}^{i+alpha-1} (x_t - xbar)^2.
/// Cancellation below zero is clamped before the square root.
std::vector<double> variance_difference_curve(const Series& x, int alpha);

/// Dtilde(i) = (1/alpha) * sum_{j=i}^{i+alpha-1} d_j, i = 1 .. len(d)-alpha+1.
std::vector<double> double_average(std::span<const double> d, int alpha);

/// T(i) = (|dtilde(i)| + c) / (|dtilde(i + 3*alpha/2)| + c). Requires even
/// alpha and ridge c > 0; every output is strictly positive.
std::vector<double> ridge_ratio_curve(std::span<const double> dtilde, int alpha, double ridge);

/// Full curve computation for one series under one configuration.
/// Requires n >= ceil(9*alpha/2) so the T range is non-empty.
PulseCurve pulse_curve(const Series& x, const DetectorConfig& config);

}  // namespace pulse
