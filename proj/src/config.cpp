#include "pulse/config.hpp"

#include <cmath>

namespace pulse {

void DetectorConfig::validate() const {
    if (alpha < 4 || alpha % 2 != 0) {
        throw invalid_window_error("alpha must be an even integer >= 4, got " +
                                   std::to_string(alpha));
    }
    if (!(ridge > 0.0) || !std::isfinite(ridge)) {
        throw invalid_ridge_error("ridge must be a positive finite real, got " +
                                  std::to_string(ridge));
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw invalid_input_error("tau must be in (0,1), got " + std::to_string(tau));
    }
}

std::string to_string(Target t) {
    return t == Target::mean ? "mean" : "variance";
}

std::string to_string(RidgeScaling m) {
    return m == RidgeScaling::literal ? "literal" : "scaled";
}

Target target_from_string(const std::string& s) {
    if (s == "mean") return Target::mean;
    if (s == "variance") return Target::variance;
    throw invalid_input_error("unknown target '" + s + "' (expected mean|variance)");
}

RidgeScaling ridge_scaling_from_string(const std::string& s) {
    if (s == "literal") return RidgeScaling::literal;
    if (s == "scaled") return RidgeScaling::scaled;
    throw invalid_input_error("unknown ridge scaling '" + s + "' (expected literal|scaled)");
}

}  // namespace pulse
