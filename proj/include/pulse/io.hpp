#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pulse/criterion.hpp"
#include "pulse/curves.hpp"
#include "pulse/series.hpp"

namespace pulse {

/// Formats a double with 12 significant digits, '.' decimal point, no
/// locale dependence.
std::string format_number(double v);

/// Reads a series from CSV: one numeric column, an optional single header
/// line, and an optional leading index column (auto-detected when every data
/// row has two fields). Three or more columns are rejected as ambiguous.
/// Parse failures report the offending line number.
Series read_series_csv(const std::string& path);
Series read_series_csv(std::istream& in, const std::string& name = "<stream>");

/// Writes rows (i, x_i, d, dtilde, t) for i = 1..n with blank cells where a
/// curve is undefined at i.
void write_curve_csv(std::ostream& out, const Series& x, const PulseCurve& curve);

/// JSON round-trip of a detection result; serialization is byte-stable under
/// parse-then-dump.
std::string estimate_to_json(const ChangePointEstimate& estimate);
ChangePointEstimate estimate_from_json(const std::string& text);

struct DetectOptions {
    std::string input;
    std::string target = "mean";
    std::optional<int> alpha;
    std::optional<double> ridge;
    double tau = 0.5;
    std::string ridge_scaling = "literal";
    bool iterative = false;
    std::optional<std::string> output;      // JSON result path; stdout when absent
    std::optional<std::string> curve_path;  // optional curve CSV export
};

struct SimulateOptions {
    std::string model = "cp";  // cp | cp-local | var
    int scenario = 1;
    int reps = 0;
    std::uint64_t seed = 0;
    bool iterative = false;
    std::optional<std::string> out;  // report path (.json for JSON, CSV otherwise)
    std::optional<std::string> var_levels;      // comma-separated sigma levels
    std::optional<std::string> var_boundaries;  // comma-separated boundaries
    int threads = 0;  // 0: take PULSE_THREADS, default 1
};

// Exit codes: 0 success, 2 usage/validation error, 1 internal error.
int run_detect_command(const DetectOptions& opt, std::ostream& out, std::ostream& err);
int run_simulate_command(const SimulateOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace pulse
