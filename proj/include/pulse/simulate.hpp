#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "pulse/population.hpp"
#include "pulse/series.hpp"

#include <nlohmann/json_fwd.hpp>

namespace pulse {

/// splitmix64 finalizer; used to decorrelate user seeds and replication indices.
std::uint64_t mix_seed(std::uint64_t v);

/// Seed for replication `rep` of a run with the given base seed. Documented
/// rule: mix_seed(base_seed + golden_gamma * (rep + 1)), making replications
/// independent of each other and of worker scheduling.
std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t rep);

/// Deterministic source of the distributions used by the synthetic models.
/// All draws are built from std::mt19937_64 bits through fixed algorithms
/// (Box-Muller normals, t3 = Z / sqrt(chi2_3 / 3)), so sequences are
/// reproducible across platforms.
class RandomSource {
  public:
    explicit RandomSource(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    double uniform01();        // [0, 1)
    double normal();           // N(0, 1)
    double student_t3();       // t with 3 degrees of freedom

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Error scenarios of the synthetic models.
enum class ErrorKind {
    gauss_unit,      // N(0, 1)
    gauss_var3,      // N(0, 3), variance 3
    uniform_scaled,  // 7 * U(-1, 1), variance 49/3
    t3_scaled,       // 3 * t_3, variance 27
    t3_unit,         // t_3, variance 3
};

struct ErrorDistribution {
    ErrorKind kind = ErrorKind::gauss_unit;
    double scale = 1.0;  // extra multiplier; 0 silences the noise entirely

    double draw(RandomSource& rng) const;
    double variance() const;
};

/// How the noise enters: X = mu + eps, or X = sigma * eps.
enum class Form { additive_mean, multiplicative_variance };

struct ModelSpec {
    PiecewiseSignal signal;
    ErrorDistribution error;
    Form form = Form::additive_mean;
};

/// The fixed 11-change-point mean model on n = 2048 under scenario 1..4
/// (gauss_unit, gauss_var3, uniform_scaled, t3_scaled).
ModelSpec cp_model(int scenario);

/// Same boundaries with the weak levels; scenario 4 uses unscaled t_3.
ModelSpec cp_local_model(int scenario);

/// Multiplicative variance model with caller-supplied standard-deviation
/// levels. Boundaries whose adjacent levels are equal are collapsed, so an
/// all-equal level list yields a zero-change-point truth.
ModelSpec variance_model(const std::vector<double>& levels, const std::vector<int>& boundaries,
                         std::size_t n, int scenario);

/// The documented default variance model: alternating sigma 1 and 3 on the
/// cp_model boundaries.
ModelSpec default_variance_model(int scenario);

/// Draws one series from the model; deterministic in (model, seed). Returns
/// the realized series together with the ground truth for scoring.
std::pair<Series, PiecewiseSignal> sample_series(const ModelSpec& model, std::uint64_t seed);

void to_json(nlohmann::json& j, const ModelSpec& model);
void from_json(const nlohmann::json& j, ModelSpec& model);

/// File-level model-spec exchange for harness configurations.
ModelSpec load_model_spec(const std::string& path);
void save_model_spec(const ModelSpec& model, const std::string& path);

std::string to_string(ErrorKind kind);
ErrorKind error_kind_from_string(const std::string& s);

}  // namespace pulse
