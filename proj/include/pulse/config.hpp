#pragma once

#include <string>

#include "pulse/error.hpp"

namespace pulse {

/// Which moment of the sequence the detector watches.
enum class Target { mean, variance };

/// How the data-driven ridge refinement uses the average segment deviation
/// sigma_bar: `literal` divides the base ridge by sigma_bar, `scaled`
/// multiplies (the latter keeps the ridge proportional to the noise scale).
enum class RidgeScaling { literal, scaled };

struct DetectorConfig {
    int alpha = 0;          // moving window length, even and >= 4
    double ridge = 0.0;     // ridge constant c, > 0
    double tau = 0.5;       // threshold in (0,1)
    Target target = Target::mean;
    RidgeScaling ridge_scaling = RidgeScaling::literal;

    /// Throws invalid_window_error / invalid_ridge_error / invalid_input_error
    /// when a field is out of contract.
    void validate() const;
};

std::string to_string(Target t);
std::string to_string(RidgeScaling m);
Target target_from_string(const std::string& s);
RidgeScaling ridge_scaling_from_string(const std::string& s);

}  // namespace pulse
