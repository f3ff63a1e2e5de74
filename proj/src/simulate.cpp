#include "pulse/simulate.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace pulse {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

const std::vector<int> kCpBoundaries = {161, 323, 485, 638, 801, 967, 1132, 1299, 1465, 1632, 1794};
const std::vector<double> kCpLevels = {1, 3, 2, -1, 1, 3, 2, 5, 1, -2, 3, 0};
const std::vector<double> kCpLocalLevels = {0, 0.7, 0, -0.7, 0.7, 0, 2, 2.7, 0, -2.7, -2, 0};
constexpr std::size_t kCpLength = 2048;

ErrorKind scenario_kind(int scenario, bool local) {
    switch (scenario) {
        case 1: return ErrorKind::gauss_unit;
        case 2: return ErrorKind::gauss_var3;
        case 3: return ErrorKind::uniform_scaled;
        case 4: return local ? ErrorKind::t3_unit : ErrorKind::t3_scaled;
        default:
            throw invalid_input_error("scenario must be 1..4, got " + std::to_string(scenario));
    }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t v) {
    v += kGoldenGamma;
    v = (v ^ (v >> 30)) * 0xBF58476D1CE4E5B9ull;
    v = (v ^ (v >> 27)) * 0x94D049BB133111EBull;
    return v ^ (v >> 31);
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t rep) {
    return mix_seed(base_seed + kGoldenGamma * (rep + 1));
}

double RandomSource::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on fixed uniform bits keeps the stream portable.
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
}

double RandomSource::student_t3() {
    const double z = normal();
    const double a = normal(), b = normal(), c = normal();
    const double chi2 = a * a + b * b + c * c;
    return z / std::sqrt(chi2 / 3.0);
}

double ErrorDistribution::draw(RandomSource& rng) const {
    double v = 0.0;
    switch (kind) {
        case ErrorKind::gauss_unit: v = rng.normal(); break;
        case ErrorKind::gauss_var3: v = rng.normal() * std::sqrt(3.0); break;
        case ErrorKind::uniform_scaled: v = 7.0 * (2.0 * rng.uniform01() - 1.0); break;
        case ErrorKind::t3_scaled: v = 3.0 * rng.student_t3(); break;
        case ErrorKind::t3_unit: v = rng.student_t3(); break;
    }
    return scale * v;
}

double ErrorDistribution::variance() const {
    double v = 1.0;
    switch (kind) {
        case ErrorKind::gauss_unit: v = 1.0; break;
        case ErrorKind::gauss_var3: v = 3.0; break;
        case ErrorKind::uniform_scaled: v = 49.0 / 3.0; break;
        case ErrorKind::t3_scaled: v = 27.0; break;
        case ErrorKind::t3_unit: v = 3.0; break;
    }
    return scale * scale * v;
}

ModelSpec cp_model(int scenario) {
    ModelSpec model;
    model.signal.n = kCpLength;
    model.signal.boundaries = kCpBoundaries;
    model.signal.levels = kCpLevels;
    model.signal.target = Target::mean;
    model.signal.validate();
    model.error.kind = scenario_kind(scenario, false);
    model.form = Form::additive_mean;
    return model;
}

ModelSpec cp_local_model(int scenario) {
    ModelSpec model;
    model.signal.n = kCpLength;
    model.signal.boundaries = kCpBoundaries;
    model.signal.levels = kCpLocalLevels;
    model.signal.target = Target::mean;
    model.signal.validate();
    model.error.kind = scenario_kind(scenario, true);
    model.form = Form::additive_mean;
    return model;
}

ModelSpec variance_model(const std::vector<double>& levels, const std::vector<int>& boundaries,
                         std::size_t n, int scenario) {
    if (levels.size() != boundaries.size() + 1) {
        throw invalid_input_error("need exactly one more level than boundaries");
    }
    for (double s : levels) {
        if (!(s > 0.0)) throw invalid_input_error("variance levels must be positive");
    }
    // Collapse boundaries whose adjacent levels coincide.
    std::vector<double> lv;
    std::vector<int> bd;
    lv.push_back(levels[0]);
    for (std::size_t k = 0; k < boundaries.size(); ++k) {
        if (levels[k + 1] != lv.back()) {
            lv.push_back(levels[k + 1]);
            bd.push_back(boundaries[k]);
        }
    }
    ModelSpec model;
    model.signal.n = n;
    model.signal.boundaries = bd;
    model.signal.levels = lv;
    model.signal.target = Target::variance;
    model.signal.validate();
    model.error.kind = scenario_kind(scenario, false);
    model.form = Form::multiplicative_variance;
    return model;
}

ModelSpec default_variance_model(int scenario) {
    std::vector<double> levels;
    for (std::size_t k = 0; k <= kCpBoundaries.size(); ++k) {
        levels.push_back(k % 2 == 0 ? 1.0 : 3.0);
    }
    return variance_model(levels, kCpBoundaries, kCpLength, scenario);
}

std::pair<Series, PiecewiseSignal> sample_series(const ModelSpec& model, std::uint64_t seed) {
    model.signal.validate();
    RandomSource rng(seed);
    const std::vector<double> base = model.signal.expand();
    std::vector<double> x(base.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double eps = model.error.draw(rng);
        x[i] = model.form == Form::additive_mean ? base[i] + eps : base[i] * eps;
    }
    return {Series(std::move(x)), model.signal};
}

void to_json(nlohmann::json& j, const ModelSpec& model) {
    j = nlohmann::json{{"n", model.signal.n},
                       {"boundaries", model.signal.boundaries},
                       {"levels", model.signal.levels},
                       {"form", model.form == Form::additive_mean ? "additive_mean"
                                                                  : "multiplicative_variance"},
                       {"error", {{"kind", to_string(model.error.kind)},
                                  {"scale", model.error.scale}}}};
}

void from_json(const nlohmann::json& j, ModelSpec& model) {
    model.signal.n = j.at("n").get<std::size_t>();
    model.signal.boundaries = j.at("boundaries").get<std::vector<int>>();
    model.signal.levels = j.at("levels").get<std::vector<double>>();
    const std::string form = j.at("form").get<std::string>();
    if (form == "additive_mean") {
        model.form = Form::additive_mean;
        model.signal.target = Target::mean;
    } else if (form == "multiplicative_variance") {
        model.form = Form::multiplicative_variance;
        model.signal.target = Target::variance;
    } else {
        throw invalid_input_error("unknown model form '" + form + "'");
    }
    model.error.kind = error_kind_from_string(j.at("error").at("kind").get<std::string>());
    model.error.scale = j.at("error").value("scale", 1.0);
    model.signal.validate();
}

ModelSpec load_model_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_data_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_data_error("bad model spec in '" + path + "': " + e.what());
    }
    ModelSpec model;
    try {
        from_json(j, model);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_data_error("bad model spec in '" + path + "': " + e.what());
    }
    return model;
}

void save_model_spec(const ModelSpec& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invalid_data_error("cannot write '" + path + "'");
    nlohmann::json j;
    to_json(j, model);
    out << j.dump(2) << '\n';
}

std::string to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::gauss_unit: return "gauss_unit";
        case ErrorKind::gauss_var3: return "gauss_var3";
        case ErrorKind::uniform_scaled: return "uniform_scaled";
        case ErrorKind::t3_scaled: return "t3_scaled";
        case ErrorKind::t3_unit: return "t3_unit";
    }
    return "gauss_unit";
}

ErrorKind error_kind_from_string(const std::string& s) {
    if (s == "gauss_unit") return ErrorKind::gauss_unit;
    if (s == "gauss_var3") return ErrorKind::gauss_var3;
    if (s == "uniform_scaled") return ErrorKind::uniform_scaled;
    if (s == "t3_scaled") return ErrorKind::t3_scaled;
    if (s == "t3_unit") return ErrorKind::t3_unit;
    throw invalid_input_error("unknown error kind '" + s + "'");
}

}  // namespace pulse
