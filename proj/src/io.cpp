#include "pulse/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pulse/harness.hpp"
#include "pulse/simulate.hpp"

namespace pulse {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& s, double& out) {
    const char* b = s.data();
    const char* e = s.data() + s.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e && !s.empty();
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const std::string& cell : split_fields(s)) {
        double v = 0.0;
        if (!parse_double(cell, v)) {
            throw invalid_input_error("unparsable " + what + " entry '" + cell + "'");
        }
        out.push_back(v);
    }
    return out;
}

nlohmann::ordered_json config_to_json(const DetectorConfig& cfg) {
    return nlohmann::ordered_json{{"alpha", cfg.alpha},
                                  {"ridge", cfg.ridge},
                                  {"tau", cfg.tau},
                                  {"target", to_string(cfg.target)},
                                  {"ridge_scaling", to_string(cfg.ridge_scaling)}};
}

DetectorConfig config_from_json(const nlohmann::ordered_json& j) {
    DetectorConfig cfg;
    cfg.alpha = j.at("alpha").get<int>();
    cfg.ridge = j.at("ridge").get<double>();
    cfg.tau = j.at("tau").get<double>();
    cfg.target = target_from_string(j.at("target").get<std::string>());
    cfg.ridge_scaling = ridge_scaling_from_string(j.at("ridge_scaling").get<std::string>());
    return cfg;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PULSE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, p);
}

Series read_series_csv(std::istream& in, const std::string& name) {
    std::vector<double> values;
    std::string line;
    int line_no = 0;
    int n_cols = -1;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        std::vector<std::string> fields = split_fields(stripped);
        if (first_content) {
            first_content = false;
            bool all_numeric = true;
            for (const std::string& f : fields) {
                double tmp;
                if (!parse_double(f, tmp)) {
                    all_numeric = false;
                    break;
                }
            }
            if (!all_numeric) continue;  // single header line
        }
        if (fields.size() > 2) {
            throw invalid_data_error(name + ":" + std::to_string(line_no) +
                                     ": ambiguous columns (" + std::to_string(fields.size()) +
                                     " fields; expected one value column with optional index)");
        }
        if (n_cols == -1) n_cols = static_cast<int>(fields.size());
        if (static_cast<int>(fields.size()) != n_cols) {
            throw invalid_data_error(name + ":" + std::to_string(line_no) +
                                     ": inconsistent column count");
        }
        double v = 0.0;
        if (n_cols == 2) {
            double idx = 0.0;
            if (!parse_double(fields[0], idx)) {
                throw invalid_data_error(name + ":" + std::to_string(line_no) +
                                         ": unparsable index cell '" + fields[0] + "'");
            }
        }
        const std::string& cell = fields[n_cols - 1];
        if (!parse_double(cell, v) || !std::isfinite(v)) {
            throw invalid_data_error(name + ":" + std::to_string(line_no) +
                                     ": unparsable cell '" + cell + "'");
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw invalid_data_error(name + ": no data rows");
    }
    return Series(std::move(values));
}

Series read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_data_error("cannot open '" + path + "'");
    return read_series_csv(in, path);
}

void write_curve_csv(std::ostream& out, const Series& x, const PulseCurve& curve) {
    out << "i,x,d,dtilde,t\n";
    const std::size_t n = x.size();
    for (std::size_t i = 1; i <= n; ++i) {
        out << i << ',' << format_number(x.at1(i)) << ',';
        if (i <= curve.d.size()) out << format_number(curve.d[i - 1]);
        out << ',';
        if (i <= curve.dtilde.size()) out << format_number(curve.dtilde[i - 1]);
        out << ',';
        if (i <= curve.t.size()) out << format_number(curve.t[i - 1]);
        out << '\n';
    }
}

std::string estimate_to_json(const ChangePointEstimate& estimate) {
    nlohmann::ordered_json j;
    j["k_hat"] = estimate.k_hat;
    j["locations"] = estimate.locations;
    nlohmann::ordered_json ivs = nlohmann::ordered_json::array();
    for (const ThresholdInterval& iv : estimate.intervals) {
        ivs.push_back(nlohmann::ordered_json{{"m", iv.m}, {"M", iv.M}});
    }
    j["intervals"] = ivs;
    j["minima"] = estimate.minima;
    j["config_used"] = config_to_json(estimate.config_used);
    return j.dump(2) + "\n";
}

ChangePointEstimate estimate_from_json(const std::string& text) {
    const auto j = nlohmann::ordered_json::parse(text);
    ChangePointEstimate est;
    est.k_hat = j.at("k_hat").get<int>();
    est.locations = j.at("locations").get<std::vector<int>>();
    for (const auto& iv : j.at("intervals")) {
        est.intervals.push_back({iv.at("m").get<int>(), iv.at("M").get<int>()});
    }
    est.minima = j.at("minima").get<std::vector<double>>();
    est.config_used = config_from_json(j.at("config_used"));
    return est;
}

int run_detect_command(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (!(opt.tau > 0.0 && opt.tau < 1.0)) {
            err << "tau must be in (0,1)\n";
            return 2;
        }
        const Target target = target_from_string(opt.target);
        const Series x = read_series_csv(opt.input);

        DetectorConfig cfg = default_config(x.size(), target);
        if (opt.alpha) cfg.alpha = *opt.alpha;
        if (opt.ridge) cfg.ridge = *opt.ridge;
        cfg.tau = opt.tau;
        cfg.ridge_scaling = ridge_scaling_from_string(opt.ridge_scaling);
        cfg.validate();

        const ChangePointEstimate est =
            opt.iterative ? detect_iterative(x, cfg) : detect(x, cfg);
        const std::string json = estimate_to_json(est);
        if (opt.output) {
            std::ofstream f(*opt.output);
            if (!f) {
                err << "cannot write '" << *opt.output << "'\n";
                return 2;
            }
            f << json;
        } else {
            out << json;
        }
        if (opt.curve_path) {
            std::ofstream f(*opt.curve_path);
            if (!f) {
                err << "cannot write '" << *opt.curve_path << "'\n";
                return 2;
            }
            write_curve_csv(f, x, pulse_curve(x, est.config_used));
        }
        return 0;
    } catch (const error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

int run_simulate_command(const SimulateOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.reps < 1) {
            err << "reps must be >= 1\n";
            return 2;
        }
        ModelSpec model;
        if (opt.model == "cp") {
            model = cp_model(opt.scenario);
        } else if (opt.model == "cp-local") {
            model = cp_local_model(opt.scenario);
        } else if (opt.model == "var") {
            if (opt.var_levels) {
                if (!opt.var_boundaries) {
                    err << "--var-levels requires --var-boundaries\n";
                    return 2;
                }
                const std::vector<double> levels = parse_double_list(*opt.var_levels, "level");
                std::vector<int> bounds;
                for (double b : parse_double_list(*opt.var_boundaries, "boundary")) {
                    bounds.push_back(static_cast<int>(b));
                }
                model = variance_model(levels, bounds, 2048, opt.scenario);
            } else {
                err << "warning: no sigma levels given; using alternating 1/3 defaults\n";
                model = default_variance_model(opt.scenario);
            }
        } else {
            err << "unknown model '" << opt.model << "' (expected cp|cp-local|var)\n";
            return 2;
        }

        const Policy policy = opt.iterative ? Policy::iterative : Policy::plain;
        const ReplicationReport report =
            run_replications(model, policy, opt.reps, opt.seed, resolve_threads(opt.threads));

        out << tabulate_header() << '\n' << tabulate(report) << '\n';
        if (opt.out) {
            std::ofstream f(*opt.out);
            if (!f) {
                err << "cannot write '" << *opt.out << "'\n";
                return 2;
            }
            if (opt.out->size() >= 5 && opt.out->substr(opt.out->size() - 5) == ".json") {
                nlohmann::json j;
                to_json(j, report);
                f << j.dump(2) << '\n';
            } else {
                f << tabulate_header() << '\n' << tabulate(report) << '\n';
            }
        }
        return 0;
    } catch (const error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace pulse
