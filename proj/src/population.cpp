#include "pulse/population.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pulse {

namespace {

// Naive O(n*alpha) evaluation of the defining sums; deliberately independent
// of the prefix-sum implementation so it can serve as an oracle.
std::vector<double> naive_window_means(const std::vector<double>& v, int alpha) {
    std::vector<double> out(v.size() - alpha + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < alpha; ++j) s += v[i + j];
        out[i] = s / alpha;
    }
    return out;
}

}  // namespace

void PiecewiseSignal::validate() const {
    if (n < 2) throw invalid_input_error("signal length must be at least 2");
    if (levels.size() != boundaries.size() + 1) {
        throw invalid_input_error("need exactly one more level than boundaries");
    }
    int prev = 1;
    for (int z : boundaries) {
        if (z <= prev || static_cast<std::size_t>(z) >= n) {
            throw invalid_input_error("boundaries must satisfy 1 < z_1 < ... < z_K < n");
        }
        prev = z;
    }
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        if (levels[k] == levels[k + 1]) {
            throw invalid_input_error("consecutive levels must differ (zero jump at segment " +
                                      std::to_string(k + 1) + ")");
        }
    }
    if (target == Target::variance) {
        for (double s : levels) {
            if (!(s > 0.0)) {
                throw invalid_input_error("variance-target levels must be positive");
            }
        }
    }
}

int PiecewiseSignal::min_segment_length() const {
    // min over k of z_{k+1} - z_k with the implied edges z_0 = 0, z_{K+1} = n.
    int best = static_cast<int>(n);
    int prev = 0;
    for (int z : boundaries) {
        best = std::min(best, z - prev);
        prev = z;
    }
    best = std::min(best, static_cast<int>(n) - prev);
    return best;
}

double PiecewiseSignal::min_jump() const {
    double nu = 0.0;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double b = std::abs(levels[k + 1] - levels[k]);
        nu = (k == 0) ? b : std::min(nu, b);
    }
    return nu;
}

std::vector<double> PiecewiseSignal::expand() const {
    std::vector<double> out(n);
    std::size_t seg = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        while (seg < boundaries.size() && static_cast<int>(i) >= boundaries[seg]) ++seg;
        out[i - 1] = levels[seg];
    }
    return out;
}

PulseCurve population_curves(const PiecewiseSignal& signal, int alpha, double ridge) {
    signal.validate();
    if (alpha < 4 || alpha % 2 != 0) {
        throw invalid_window_error("population curves need an even alpha >= 4");
    }
    if (signal.n < static_cast<std::size_t>(9 * alpha / 2)) {
        throw invalid_input_error("signal too short for alpha=" + std::to_string(alpha));
    }
    if (!(ridge > 0.0)) throw invalid_ridge_error("ridge must be positive");

    const std::vector<double> lv = signal.expand();
    std::vector<double> base;
    if (signal.target == Target::mean) {
        base = naive_window_means(lv, alpha);
    } else {
        // Population windowed deviation: root of the window-averaged variance.
        std::vector<double> var(lv.size());
        for (std::size_t i = 0; i < lv.size(); ++i) var[i] = lv[i] * lv[i];
        base = naive_window_means(var, alpha);
        for (double& v : base) v = std::sqrt(v);
    }

    PulseCurve curve;
    curve.alpha = alpha;
    curve.target = signal.target;
    curve.d.resize(signal.n - 2 * alpha + 1);
    for (std::size_t i = 0; i < curve.d.size(); ++i) {
        curve.d[i] = base[i] - base[i + alpha];
    }
    curve.dtilde.resize(curve.d.size() - alpha + 1);
    for (std::size_t i = 0; i < curve.dtilde.size(); ++i) {
        double s = 0.0;
        for (int j = 0; j < alpha; ++j) s += curve.d[i + j];
        curve.dtilde[i] = s / alpha;
    }
    const std::size_t lag = static_cast<std::size_t>(3 * alpha / 2);
    curve.t.resize(curve.dtilde.size() - lag);
    for (std::size_t i = 0; i < curve.t.size(); ++i) {
        curve.t[i] = (std::abs(curve.dtilde[i]) + ridge) / (std::abs(curve.dtilde[i + lag]) + ridge);
    }
    return curve;
}

std::vector<double> closed_form_dtilde(const PiecewiseSignal& signal, int alpha) {
    signal.validate();
    if (signal.target != Target::mean) {
        throw unsupported_geometry_error("closed form is stated for the mean target only");
    }
    if (signal.min_segment_length() <= 4 * alpha) {
        throw unsupported_geometry_error("closed form needs all segment lengths > 4*alpha");
    }
    const std::size_t len = signal.n - 3 * alpha + 2;
    std::vector<double> out(len, 0.0);

    // Ramp pieces use the triangular sums 1 + ... + m = m(m+1)/2; the
    // quadratic middle pieces are the display polynomials, taken in absolute
    // value since the descending piece is printed with its sign flipped.
    const double a = alpha;
    for (std::size_t k = 0; k < signal.boundaries.size(); ++k) {
        const double z = signal.boundaries[k];
        const double beta = std::abs(signal.levels[k + 1] - signal.levels[k]);
        const int lo = signal.boundaries[k] - 2 * alpha + 1;
        const int hi = signal.boundaries[k] + alpha;
        for (int i = std::max(lo, 1); i <= std::min<int>(hi, static_cast<int>(len)); ++i) {
            const double x = i;
            double v = 0.0;
            if (x <= z - a) {
                const double m = x - z + 2 * a;
                v = m * (m + 1) / (2 * a * a);
            } else if (x <= z - a / 2) {
                v = (-x * x - a * x + 2 * x * z - x + z - z * z + a * z + 0.5 * (a * a - a)) /
                    (a * a);
            } else if (x <= z) {
                v = std::abs(x * x + a * x - 2 * x * z + x - z + z * z - a * z -
                             0.5 * (a * a - a)) /
                    (a * a);
            } else {
                const double m = z + a - x + 1;
                v = m * (m + 1) / (2 * a * a);
            }
            out[i - 1] = v * beta;
        }
    }
    return out;
}

PatternReport pulse_pattern_check(const PulseCurve& curves, const PiecewiseSignal& signal,
                                  int alpha, double ridge, double tol) {
    PatternReport report;
    const std::vector<double>& t = curves.t;
    const int t_len = static_cast<int>(t.size());
    const double nu = signal.boundaries.empty() ? 0.0 : signal.min_jump();
    const double dip_bound = ridge / (0.75 * nu + ridge);
    const double peak_bound = (0.75 * nu + ridge) / ridge;

    auto fail = [&](const std::string& msg) {
        report.pass = false;
        report.issues.push_back(msg);
    };

    for (std::size_t k = 0; k < signal.boundaries.size(); ++k) {
        const int z = signal.boundaries[k];
        const std::string tag = "change point " + std::to_string(k + 1) + " (z=" +
                                std::to_string(z) + ")";
        // Dip window around the data-forced minimizer z - 3*alpha.
        const int w_lo = std::max(z - 3 * alpha - alpha / 2, 1);
        const int w_hi = std::min(z - 3 * alpha + alpha / 2, t_len);
        if (w_lo > w_hi) {
            fail(tag + ": dip window outside the T range");
            continue;
        }
        double vmin = t[w_lo - 1];
        for (int i = w_lo; i <= w_hi; ++i) vmin = std::min(vmin, t[i - 1]);
        if (!(vmin <= dip_bound + tol)) {
            fail(tag + ": dip minimum " + std::to_string(vmin) + " above bound " +
                 std::to_string(dip_bound));
            continue;
        }
        // The minimizing indices must form a single plateau (one local minimum).
        int first = 0, last = 0, blocks = 0;
        bool in_block = false;
        for (int i = w_lo; i <= w_hi; ++i) {
            if (t[i - 1] == vmin) {
                if (!in_block) {
                    ++blocks;
                    if (blocks == 1) first = i;
                    in_block = true;
                }
                last = i;
            } else {
                in_block = false;
            }
        }
        if (blocks != 1) {
            fail(tag + ": " + std::to_string(blocks) + " minimum plateaus in the dip window");
            continue;
        }
        (void)last;
        // A qualifying local maximum must follow within 3*alpha/2 + 1 indices.
        const int m_hi = std::min(first + 3 * alpha / 2 + 1, t_len);
        double vmax = 0.0;
        for (int i = first; i <= m_hi; ++i) vmax = std::max(vmax, t[i - 1]);
        if (!(vmax >= peak_bound - tol)) {
            fail(tag + ": following maximum " + std::to_string(vmax) + " below bound " +
                 std::to_string(peak_bound));
        }
    }

    // Far field: exactly 1 away from every pulse center z - 2*alpha.
    for (int i = 1; i <= t_len; ++i) {
        bool near = false;
        for (int z : signal.boundaries) {
            if (std::abs(i - (z - 2 * alpha)) <= 4 * alpha) {
                near = true;
                break;
            }
        }
        if (!near && std::abs(t[i - 1] - 1.0) > 1e-12) {
            fail("far-field index " + std::to_string(i) + ": T=" + std::to_string(t[i - 1]) +
                 " != 1");
            if (report.issues.size() > 20) break;
        }
    }
    return report;
}

}  // namespace pulse
