#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pulse/simulate.hpp"

#include <nlohmann/json_fwd.hpp>

namespace pulse {

/// Which detection routine the harness drives.
enum class Policy { plain, iterative };

/// Aggregate of a seeded Monte-Carlo run. khat_minus_k buckets are
/// {<=-3, -2, -1, 0, +1, +2, >=+3}; location_errors holds max_k |zhat_k - z_k|
/// for the replications with the correct count. Wall-clock runtimes are kept
/// in memory only and never serialized, so emitted reports stay byte-stable.
struct ReplicationReport {
    int reps = 0;
    std::array<long, 7> khat_minus_k{};
    std::vector<double> location_errors;
    std::vector<double> runtimes;
    int failures = 0;
    std::uint64_t base_seed = 0;
    std::string seed_rule = "splitmix64(base_seed + golden_gamma * (rep + 1))";
    Policy policy = Policy::plain;

    long bucket0() const { return khat_minus_k[3]; }
    double bucket0_fraction() const;
    /// Median of location_errors; NaN when empty.
    double median_location_error() const;
};

/// Runs `reps` seeded replications of detect (or detect_iterative) over the
/// model and scores them against the truth. Deterministic for fixed
/// (model, policy, reps, base_seed) independent of `threads`: every
/// replication derives its own seed from its index and results are merged in
/// index order. Per-replication failures are recorded; more than 1% of them
/// raises pulse::error.
ReplicationReport run_replications(const ModelSpec& model, Policy policy, int reps,
                                   std::uint64_t base_seed, int threads = 1);

/// CSV header for tabulate rows.
std::string tabulate_header();

/// One CSV row: the seven bucket counts in display order, the bucket-0
/// fraction, and the median location error (blank when undefined).
std::string tabulate(const ReplicationReport& report);

/// Parses a tabulate row back into the fields it encodes.
ReplicationReport parse_tabulated(const std::string& row);

void to_json(nlohmann::json& j, const ReplicationReport& report);

}  // namespace pulse
