#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pulse/config.hpp"
#include "pulse/curves.hpp"
#include "pulse/series.hpp"

namespace pulse {

/// A run of T indices treated as one dip (1-based, inclusive). From
/// threshold_intervals these are maximal sub-threshold runs; detect reports
/// them after coalescing runs less than one window apart.
struct ThresholdInterval {
    int m = 0;
    int M = 0;
};

/// Detection result: k_hat change points at `locations` (1-based data
/// indices), one dip interval and achieved minimum per point.
struct ChangePointEstimate {
    int k_hat = 0;
    std::vector<int> locations;
    std::vector<ThresholdInterval> intervals;
    std::vector<double> minima;
    DetectorConfig config_used;
};

/// Maximal runs {i : t_i < tau}, ascending and disjoint. tau must lie in (0,1).
std::vector<ThresholdInterval> threshold_intervals(std::span<const double> t, double tau);

/// Coalesces intervals separated by at most `gap` indices. The population
/// ratio curve keeps adjacent minimizers more than 2*alpha apart, so runs
/// closer than one window apart are fragments of a single dip.
std::vector<ThresholdInterval> merge_intervals(std::vector<ThresholdInterval> intervals, int gap);

/// Per-interval minimizers mapped to data locations. The T minimum produced
/// by a change at z sits at index z - 3*alpha, so the reported location is
/// argmin + 3*alpha (leftmost argmin on ties). Output is ascending.
std::vector<int> locate_changepoints(std::span<const double> t,
                                     const std::vector<ThresholdInterval>& intervals, int alpha);

/// Data-driven defaults: alpha = largest even integer <= n^0.6 / 3 (at least
/// 4), tau = 0.5, ridge = sqrt(ln n / alpha). Requires n >= 18 so the minimal
/// window admits a non-empty T range; n >= 30 is recommended.
DetectorConfig default_config(std::size_t n, Target target);

/// Ridge refinement from a preliminary segmentation: sigma_bar is the average
/// sample standard deviation over the segments between consecutive estimated
/// locations (segments shorter than 2 skipped). Returns
/// sqrt(ln n / alpha) / sigma_bar (literal) or sigma_bar * sqrt(ln n / alpha)
/// (scaled); the unrefined base when sigma_bar is zero or undefined.
double refine_ridge(const Series& x, const ChangePointEstimate& estimate, int alpha,
                    RidgeScaling mode);

/// Two-pass detection: curves and thresholding with the starting ridge, ridge
/// refinement from that preliminary segmentation, then a final pass with the
/// refined ridge. Without a config the defaults for the mean target are used.
ChangePointEstimate detect(const Series& x, std::optional<DetectorConfig> config = std::nullopt);

/// Recursive detection for short spacings: detect on the whole series, then
/// re-run on every segment between consecutive estimated locations with the
/// window re-derived from the segment length, until a segment yields nothing
/// or is shorter than 30 observations. Locations from all levels are merged;
/// two locations within the larger of their discovery windows collapse to the
/// one with the smaller T minimum.
ChangePointEstimate detect_iterative(const Series& x,
                                     std::optional<DetectorConfig> config = std::nullopt);

}  // namespace pulse
