#pragma once

#include <stdexcept>
#include <string>

namespace pulse {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Window length incompatible with the data (too large, odd where even is required, ...).
class invalid_window_error : public error {
  public:
    using error::error;
};

/// Non-finite or otherwise unusable input data.
class invalid_data_error : public error {
  public:
    using error::error;
};

/// Non-positive ridge constant.
class invalid_ridge_error : public error {
  public:
    using error::error;
};

/// Invalid argument outside the window/ridge categories (bad tau, series too short, ...).
class invalid_input_error : public error {
  public:
    using error::error;
};

/// Signal geometry not supported by a closed-form evaluation.
class unsupported_geometry_error : public error {
  public:
    using error::error;
};

}  // namespace pulse
