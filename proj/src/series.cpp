#include "pulse/series.hpp"

#include <cmath>
#include <string>

namespace pulse {

Series::Series(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw invalid_data_error("non-finite value at position " + std::to_string(i + 1));
        }
    }
}

}  // namespace pulse
