#include "pulse/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pulse/criterion.hpp"
#include "pulse/io.hpp"

namespace pulse {

namespace {

struct RepResult {
    int khat_delta = 0;
    double max_error = -1.0;  // < 0: not applicable (khat != k)
    double runtime = 0.0;
    bool failed = false;
};

RepResult run_one(const ModelSpec& model, Policy policy, std::uint64_t base_seed, int rep) {
    RepResult r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        auto [series, truth] = sample_series(model, replication_seed(base_seed, rep));
        DetectorConfig cfg = default_config(series.size(), truth.target);
        const ChangePointEstimate est = policy == Policy::plain
                                            ? detect(series, cfg)
                                            : detect_iterative(series, cfg);
        r.khat_delta = est.k_hat - truth.k();
        if (r.khat_delta == 0 && est.k_hat > 0) {
            double worst = 0.0;
            for (int i = 0; i < est.k_hat; ++i) {
                worst = std::max(worst, std::abs(static_cast<double>(est.locations[i]) -
                                                 truth.boundaries[i]));
            }
            r.max_error = worst;
        } else if (r.khat_delta == 0) {
            r.max_error = 0.0;
        }
    } catch (const std::exception&) {
        r.failed = true;
    }
    r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

double ReplicationReport::bucket0_fraction() const {
    return reps > 0 ? static_cast<double>(bucket0()) / reps : 0.0;
}

double ReplicationReport::median_location_error() const {
    if (location_errors.empty()) return std::nan("");
    std::vector<double> v = location_errors;
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 == 1 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

ReplicationReport run_replications(const ModelSpec& model, Policy policy, int reps,
                                   std::uint64_t base_seed, int threads) {
    if (reps < 1) throw invalid_input_error("reps must be >= 1, got " + std::to_string(reps));
    model.signal.validate();
    threads = std::max(threads, 1);

    std::vector<RepResult> results(reps);
    if (threads == 1) {
        for (int r = 0; r < reps; ++r) results[r] = run_one(model, policy, base_seed, r);
    } else {
        // Static striping: replication r runs on worker r % threads. Each
        // replication derives its own seed, so the merged results are
        // identical for every worker count.
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&, w]() {
                for (int r = w; r < reps; r += threads) {
                    results[r] = run_one(model, policy, base_seed, r);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    ReplicationReport report;
    report.reps = reps;
    report.base_seed = base_seed;
    report.policy = policy;
    for (int r = 0; r < reps; ++r) {
        const RepResult& res = results[r];
        report.runtimes.push_back(res.runtime);
        if (res.failed) {
            ++report.failures;
            continue;
        }
        const int bucket = std::clamp(res.khat_delta, -3, 3) + 3;
        ++report.khat_minus_k[bucket];
        if (res.max_error >= 0.0) report.location_errors.push_back(res.max_error);
    }
    if (report.failures * 100 > reps) {
        throw error("more than 1% of replications failed (" + std::to_string(report.failures) +
                    " of " + std::to_string(reps) + ")");
    }
    return report;
}

std::string tabulate_header() {
    return "le_m3,m2,m1,zero,p1,p2,ge_p3,bucket0_fraction,median_location_error";
}

std::string tabulate(const ReplicationReport& report) {
    std::ostringstream os;
    for (int b = 0; b < 7; ++b) {
        if (b > 0) os << ',';
        os << report.khat_minus_k[b];
    }
    os << ',' << format_number(report.bucket0_fraction());
    os << ',';
    const double med = report.median_location_error();
    if (!std::isnan(med)) os << format_number(med);
    return os.str();
}

ReplicationReport parse_tabulated(const std::string& row) {
    ReplicationReport report;
    std::istringstream is(row);
    std::string cell;
    for (int b = 0; b < 7; ++b) {
        if (!std::getline(is, cell, ',')) throw invalid_data_error("tabulated row too short");
        report.khat_minus_k[b] = std::stol(cell);
        report.reps += report.khat_minus_k[b];
    }
    if (!std::getline(is, cell, ',')) throw invalid_data_error("tabulated row too short");
    // The fraction column is derived; recomputed from the counts on parse.
    if (std::getline(is, cell, ',') && !cell.empty()) {
        report.location_errors.assign(1, std::stod(cell));
    }
    return report;
}

void to_json(nlohmann::json& j, const ReplicationReport& report) {
    j = nlohmann::json{
        {"reps", report.reps},
        {"base_seed", report.base_seed},
        {"seed_rule", report.seed_rule},
        {"policy", report.policy == Policy::plain ? "plain" : "iterative"},
        {"khat_minus_k",
         {{"le_-3", report.khat_minus_k[0]},
          {"-2", report.khat_minus_k[1]},
          {"-1", report.khat_minus_k[2]},
          {"0", report.khat_minus_k[3]},
          {"+1", report.khat_minus_k[4]},
          {"+2", report.khat_minus_k[5]},
          {"ge_+3", report.khat_minus_k[6]}}},
        {"bucket0_fraction", report.bucket0_fraction()},
        {"failures", report.failures}};
    const double med = report.median_location_error();
    if (!std::isnan(med)) {
        j["median_location_error"] = med;
    } else {
        j["median_location_error"] = nullptr;
    }
}

}  // namespace pulse
