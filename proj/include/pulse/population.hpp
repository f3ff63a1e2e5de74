#pragma once

#include <string>
#include <vector>

#include "pulse/config.hpp"
#include "pulse/curves.hpp"

namespace pulse {

/// Ground-truth piecewise-constant signal. boundaries[k] is the first index
/// of segment k+2 (1-based), so levels[k] covers indices
/// [boundaries[k-1], boundaries[k] - 1] with implied edges 1 and n+1.
/// For the variance target the levels are standard deviations (> 0).
struct PiecewiseSignal {
    std::size_t n = 0;
    std::vector<int> boundaries;   // ascending, 1 < z_1 < ... < z_K < n
    std::vector<double> levels;    // K+1 values, consecutive entries differ
    Target target = Target::mean;

    void validate() const;
    int k() const { return static_cast<int>(boundaries.size()); }

    /// Minimum segment length alpha* (edges included).
    int min_segment_length() const;
    /// Minimum jump magnitude nu = min_k |levels[k+1] - levels[k]|.
    double min_jump() const;
    /// The level sequence expanded to length n.
    std::vector<double> expand() const;
};

/// Exact population curves obtained by brute-force evaluation of the moving
/// sum, double average and ridge ratio definitions on the expanded level
/// sequence (for the variance target: on windowed root-mean levels). This is
/// the authoritative oracle the sample curves are tested against.
PulseCurve population_curves(const PiecewiseSignal& signal, int alpha, double ridge);

/// The piecewise closed form of |Dtilde| around each change point, evaluated
/// on the D-tilde index range 1 .. n-3*alpha+2. Uses the display's own
/// coordinates, which sit one window to the right of the brute-force curve;
/// comparisons must allow a uniform index shift of up to alpha. Requires all
/// segment lengths > 4*alpha so the pieces do not overlap.
std::vector<double> closed_form_dtilde(const PiecewiseSignal& signal, int alpha);

/// Outcome of the pulse-shape verification, with human-readable issues.
struct PatternReport {
    bool pass = true;
    std::vector<std::string> issues;
};

/// Verifies the pulse pattern of a population T curve: per change point one
/// local minimum plateau at most c/((3/4)nu + c) + tol inside the dip window,
/// a local maximum of at least ((3/4)nu + c)/c - tol within 3*alpha/2 + 1
/// indices after it, and T = 1 on every index farther than 4*alpha from all
/// pulse centers z_k - 2*alpha.
PatternReport pulse_pattern_check(const PulseCurve& curves, const PiecewiseSignal& signal,
                                  int alpha, double ridge, double tol = 1e-9);

}  // namespace pulse
