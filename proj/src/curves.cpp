#include "pulse/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pulse {

namespace {

// Windowed sums of length `alpha` from a prefix-sum array: value at 1-based
// start i is prefix[i + alpha - 1] - prefix[i - 1].
std::vector<double> window_sums(const std::vector<double>& prefix, int alpha) {
    const std::size_t n = prefix.size() - 1;
    std::vector<double> out(n - alpha + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = prefix[i + alpha] - prefix[i];
    }
    return out;
}

}  // namespace

std::vector<double> prefix_sums(std::span<const double> x) {
    std::vector<double> out(x.size() + 1);
    out[0] = 0.0;
    // Neumaier-compensated accumulation keeps long-series error flat.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x[i];
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
        out[i + 1] = sum + comp;
    }
    return out;
}

std::vector<double> moving_sums(const Series& x, int alpha) {
    const std::size_t n = x.size();
    if (alpha < 1 || static_cast<std::size_t>(alpha) > n) {
        throw invalid_window_error("moving window " + std::to_string(alpha) +
                                   " out of range for series of length " + std::to_string(n));
    }
    return window_sums(prefix_sums(x.view()), alpha);
}

std::vector<double> mean_difference_curve(const Series& x, int alpha) {
    const std::size_t n = x.size();
    if (alpha < 1 || 2 * static_cast<std::size_t>(alpha) > n) {
        throw invalid_window_error("mean difference curve needs 2*alpha <= n; alpha=" +
                                   std::to_string(alpha) + ", n=" + std::to_string(n));
    }
    const std::vector<double> s = moving_sums(x, alpha);
    std::vector<double> d(n - 2 * alpha + 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = (s[i] - s[i + alpha]) / alpha;
    }
    return d;
}

std::vector<double> variance_difference_curve(const Series& x, int alpha) {
    const std::size_t n = x.size();
    if (alpha < 1 || 2 * static_cast<std::size_t>(alpha) > n) {
        throw invalid_window_error("variance difference curve needs 2*alpha <= n; alpha=" +
                                   std::to_string(alpha) + ", n=" + std::to_string(n));
    }
    const std::vector<double> px = prefix_sums(x.view());
    const double xbar = px[n] / static_cast<double>(n);

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = x.values()[i] - xbar;
        sq[i] = c * c;
    }
    const std::vector<double> wsum = window_sums(prefix_sums(sq), alpha);
    std::vector<double> sd(wsum.size());
    for (std::size_t i = 0; i < wsum.size(); ++i) {
        sd[i] = std::sqrt(std::max(wsum[i] / alpha, 0.0));
    }
    std::vector<double> d(n - 2 * alpha + 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = sd[i] - sd[i + alpha];
    }
    return d;
}

std::vector<double> double_average(std::span<const double> d, int alpha) {
    if (alpha < 1 || static_cast<std::size_t>(alpha) > d.size()) {
        throw invalid_window_error("double average window " + std::to_string(alpha) +
                                   " exceeds input length " + std::to_string(d.size()));
    }
    std::vector<double> out = window_sums(prefix_sums(d), alpha);
    for (double& v : out) v /= alpha;
    return out;
}

std::vector<double> ridge_ratio_curve(std::span<const double> dtilde, int alpha, double ridge) {
    if (!(ridge > 0.0) || !std::isfinite(ridge)) {
        throw invalid_ridge_error("ridge must be positive, got " + std::to_string(ridge));
    }
    if (alpha < 2 || alpha % 2 != 0) {
        throw invalid_window_error("ridge ratio needs an even alpha >= 2, got " +
                                   std::to_string(alpha));
    }
    const std::size_t lag = static_cast<std::size_t>(3 * alpha / 2);
    if (lag >= dtilde.size()) {
        throw invalid_window_error("ridge ratio needs 3*alpha/2 < len(dtilde); alpha=" +
                                   std::to_string(alpha) + ", len=" + std::to_string(dtilde.size()));
    }
    std::vector<double> t(dtilde.size() - lag);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = (std::abs(dtilde[i]) + ridge) / (std::abs(dtilde[i + lag]) + ridge);
    }
    return t;
}

PulseCurve pulse_curve(const Series& x, const DetectorConfig& config) {
    config.validate();
    const std::size_t n = x.size();
    const std::size_t min_n = static_cast<std::size_t>(9 * config.alpha / 2);
    if (n < min_n) {
        throw invalid_window_error("series too short for alpha=" + std::to_string(config.alpha) +
                                   ": need n >= " + std::to_string(min_n) + ", got " +
                                   std::to_string(n));
    }
    PulseCurve curve;
    curve.alpha = config.alpha;
    curve.target = config.target;
    curve.d = config.target == Target::mean ? mean_difference_curve(x, config.alpha)
                                            : variance_difference_curve(x, config.alpha);
    curve.dtilde = double_average(curve.d, config.alpha);
    curve.t = ridge_ratio_curve(curve.dtilde, config.alpha, config.ridge);
    return curve;
}

}  // namespace pulse
