#include "pulse/criterion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pulse {

namespace {

struct Located {
    int location = 0;  // 1-based data index
    double minimum = 0.0;
    int alpha = 0;
};

// Leftmost argmin of t over the 1-based inclusive interval [m, M].
std::size_t interval_argmin(std::span<const double> t, const ThresholdInterval& iv) {
    std::size_t best = static_cast<std::size_t>(iv.m) - 1;
    for (std::size_t p = best + 1; p < static_cast<std::size_t>(iv.M); ++p) {
        if (t[p] < t[best]) best = p;
    }
    return best;
}

ChangePointEstimate run_passes(const Series& x, DetectorConfig cfg) {
    auto one_pass = [&](const DetectorConfig& c) {
        ChangePointEstimate est;
        est.config_used = c;
        const PulseCurve curve = pulse_curve(x, c);
        est.intervals = merge_intervals(threshold_intervals(curve.t, c.tau), c.alpha);
        est.locations = locate_changepoints(curve.t, est.intervals, c.alpha);
        est.minima.reserve(est.intervals.size());
        for (const ThresholdInterval& iv : est.intervals) {
            est.minima.push_back(curve.t[interval_argmin(curve.t, iv)]);
        }
        est.k_hat = static_cast<int>(est.locations.size());
        return est;
    };

    const ChangePointEstimate prelim = one_pass(cfg);
    cfg.ridge = refine_ridge(x, prelim, cfg.alpha, cfg.ridge_scaling);
    return one_pass(cfg);
}

void recurse_segments(const Series& full, int lo, int hi, const ChangePointEstimate& parent,
                      Target target, RidgeScaling mode, std::vector<Located>& found);

// Detects within [lo, hi] of the full series with a window re-derived from
// the segment length, then recurses into the resulting sub-segments.
void detect_segment(const Series& full, int lo, int hi, Target target, RidgeScaling mode,
                    std::vector<Located>& found) {
    const int len = hi - lo + 1;
    if (len < 30) return;

    DetectorConfig cfg;
    try {
        cfg = default_config(static_cast<std::size_t>(len), target);
    } catch (const error&) {
        return;
    }
    cfg.ridge_scaling = mode;
    if (len < 9 * cfg.alpha / 2) return;

    std::vector<double> seg(full.values().begin() + (lo - 1), full.values().begin() + hi);
    const ChangePointEstimate est = run_passes(Series(std::move(seg)), cfg);
    if (est.k_hat == 0) return;

    for (int i = 0; i < est.k_hat; ++i) {
        found.push_back({est.locations[i] + lo - 1, est.minima[i], cfg.alpha});
    }
    recurse_segments(full, lo, hi, est, target, mode, found);
}

void recurse_segments(const Series& full, int lo, int hi, const ChangePointEstimate& parent,
                      Target target, RidgeScaling mode, std::vector<Located>& found) {
    std::vector<int> edges;
    edges.push_back(lo);
    for (int z : parent.locations) edges.push_back(z + lo - 1);
    edges.push_back(hi + 1);
    const int len = hi - lo + 1;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        const int a = edges[j], b = edges[j + 1] - 1;
        // Locations keep a margin from both ends, so segments strictly shrink
        // and the recursion terminates.
        if (b - a + 1 < len) {
            detect_segment(full, a, b, target, mode, found);
        }
    }
}

}  // namespace

std::vector<ThresholdInterval> threshold_intervals(std::span<const double> t, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input_error("tau must be in (0,1), got " + std::to_string(tau));
    }
    std::vector<ThresholdInterval> out;
    std::size_t i = 0;
    while (i < t.size()) {
        if (t[i] < tau) {
            std::size_t j = i;
            while (j + 1 < t.size() && t[j + 1] < tau) ++j;
            out.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1});
            i = j + 1;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<ThresholdInterval> merge_intervals(std::vector<ThresholdInterval> intervals, int gap) {
    if (intervals.empty() || gap <= 0) return intervals;
    std::vector<ThresholdInterval> out;
    out.push_back(intervals.front());
    for (std::size_t k = 1; k < intervals.size(); ++k) {
        if (intervals[k].m - out.back().M - 1 <= gap) {
            out.back().M = intervals[k].M;
        } else {
            out.push_back(intervals[k]);
        }
    }
    return out;
}

std::vector<int> locate_changepoints(std::span<const double> t,
                                     const std::vector<ThresholdInterval>& intervals, int alpha) {
    std::vector<int> out;
    out.reserve(intervals.size());
    for (const ThresholdInterval& iv : intervals) {
        out.push_back(static_cast<int>(interval_argmin(t, iv)) + 1 + 3 * alpha);
    }
    return out;
}

DetectorConfig default_config(std::size_t n, Target target) {
    // alpha = 4 needs n >= 9*4/2 for a non-empty T range.
    if (n < 18) {
        throw invalid_input_error("series too short for the minimal window: need n >= 18, got " +
                                  std::to_string(n));
    }
    int alpha = static_cast<int>(std::pow(static_cast<double>(n), 0.6) / 3.0);
    alpha -= alpha % 2;
    alpha = std::max(alpha, 4);
    DetectorConfig cfg;
    cfg.alpha = alpha;
    cfg.ridge = std::sqrt(std::log(static_cast<double>(n)) / alpha);
    cfg.tau = 0.5;
    cfg.target = target;
    cfg.ridge_scaling = RidgeScaling::literal;
    return cfg;
}

double refine_ridge(const Series& x, const ChangePointEstimate& estimate, int alpha,
                    RidgeScaling mode) {
    const std::size_t n = x.size();
    const double base = std::sqrt(std::log(static_cast<double>(n)) / alpha);

    std::vector<int> edges;
    edges.push_back(1);
    for (int z : estimate.locations) edges.push_back(z);
    edges.push_back(static_cast<int>(n) + 1);

    double sum_sd = 0.0;
    int count = 0;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
        const int a = edges[j], b = edges[j + 1] - 1;
        const int len = b - a + 1;
        if (len < 2) continue;
        double mean = 0.0;
        for (int i = a; i <= b; ++i) mean += x.at1(i);
        mean /= len;
        double ss = 0.0;
        for (int i = a; i <= b; ++i) {
            const double c = x.at1(i) - mean;
            ss += c * c;
        }
        sum_sd += std::sqrt(ss / (len - 1));
        ++count;
    }
    if (count == 0) return base;
    const double sigma_bar = sum_sd / count;
    if (sigma_bar <= 0.0) return base;
    return mode == RidgeScaling::literal ? base / sigma_bar : base * sigma_bar;
}

ChangePointEstimate detect(const Series& x, std::optional<DetectorConfig> config) {
    DetectorConfig cfg = config ? *config : default_config(x.size(), Target::mean);
    cfg.validate();
    return run_passes(x, cfg);
}

ChangePointEstimate detect_iterative(const Series& x, std::optional<DetectorConfig> config) {
    DetectorConfig top = config ? *config : default_config(x.size(), Target::mean);
    top.validate();

    const ChangePointEstimate root = run_passes(x, top);
    std::vector<Located> found;
    for (int i = 0; i < root.k_hat; ++i) {
        found.push_back({root.locations[i], root.minima[i], top.alpha});
    }
    if (root.k_hat > 0) {
        recurse_segments(x, 1, static_cast<int>(x.size()), root, top.target, top.ridge_scaling,
                         found);
    }
    std::sort(found.begin(), found.end(),
              [](const Located& a, const Located& b) { return a.location < b.location; });

    // Recursion can rediscover a parent's boundary with a finer window; keep
    // the sharper of two locations within the larger discovery window.
    std::vector<Located> merged;
    for (const Located& f : found) {
        if (!merged.empty() &&
            f.location - merged.back().location <= std::max(merged.back().alpha, f.alpha)) {
            if (f.minimum < merged.back().minimum) merged.back() = f;
        } else {
            merged.push_back(f);
        }
    }

    ChangePointEstimate est;
    est.config_used = top;
    for (const Located& f : merged) {
        est.locations.push_back(f.location);
        est.minima.push_back(f.minimum);
        // Discovery intervals from nested calls live in segment-local T
        // coordinates; report the location itself as a degenerate interval.
        est.intervals.push_back({f.location, f.location});
    }
    est.k_hat = static_cast<int>(est.locations.size());
    return est;
}

}  // namespace pulse
