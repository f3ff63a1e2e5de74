#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pulse/error.hpp"

namespace pulse {

/// An ordered sequence of finite real observations. Finiteness is checked once
/// at construction so downstream operations can assume clean data.
class Series {
  public:
    explicit Series(std::vector<double> values);

    const std::vector<double>& values() const { return values_; }
    std::span<const double> view() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// 1-based element access matching the index convention used throughout.
    double at1(std::size_t i) const { return values_[i - 1]; }

  private:
    std::vector<double> values_;
};

}  // namespace pulse
