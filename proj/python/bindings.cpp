#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "pulse/criterion.hpp"
#include "pulse/curves.hpp"
#include "pulse/harness.hpp"
#include "pulse/io.hpp"
#include "pulse/population.hpp"
#include "pulse/simulate.hpp"

namespace py = pybind11;
using namespace pulse;

namespace {

DetectorConfig make_config(std::size_t n, const std::string& target, std::optional<int> alpha,
                           std::optional<double> ridge, double tau,
                           const std::string& ridge_scaling) {
    DetectorConfig cfg = default_config(n, target_from_string(target));
    if (alpha) cfg.alpha = *alpha;
    if (ridge) cfg.ridge = *ridge;
    cfg.tau = tau;
    cfg.ridge_scaling = ridge_scaling_from_string(ridge_scaling);
    cfg.validate();
    return cfg;
}

ModelSpec model_by_name(const std::string& name, int scenario) {
    if (name == "cp") return cp_model(scenario);
    if (name == "cp-local") return cp_local_model(scenario);
    if (name == "var") return default_variance_model(scenario);
    throw invalid_input_error("unknown model '" + name + "' (expected cp|cp-local|var)");
}

}  // namespace

PYBIND11_MODULE(_pulse, m) {
    m.doc() = "Ridge-ratio (PULSE) multiple change-point detection";
    m.attr("__version__") = "0.1.0";

    py::register_exception<error>(m, "PulseError");

    py::enum_<Target>(m, "Target")
        .value("mean", Target::mean)
        .value("variance", Target::variance);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init<>())
        .def_readwrite("alpha", &DetectorConfig::alpha)
        .def_readwrite("ridge", &DetectorConfig::ridge)
        .def_readwrite("tau", &DetectorConfig::tau)
        .def_readwrite("target", &DetectorConfig::target)
        .def("__repr__", [](const DetectorConfig& c) {
            return "DetectorConfig(alpha=" + std::to_string(c.alpha) +
                   ", ridge=" + std::to_string(c.ridge) + ", tau=" + std::to_string(c.tau) +
                   ", target=" + to_string(c.target) + ")";
        });

    py::class_<ThresholdInterval>(m, "ThresholdInterval")
        .def_readonly("m", &ThresholdInterval::m)
        .def_readonly("M", &ThresholdInterval::M);

    py::class_<ChangePointEstimate>(m, "ChangePointEstimate")
        .def_readonly("k_hat", &ChangePointEstimate::k_hat)
        .def_readonly("locations", &ChangePointEstimate::locations)
        .def_readonly("intervals", &ChangePointEstimate::intervals)
        .def_readonly("minima", &ChangePointEstimate::minima)
        .def_readonly("config_used", &ChangePointEstimate::config_used)
        .def("__repr__", [](const ChangePointEstimate& e) {
            return "ChangePointEstimate(k_hat=" + std::to_string(e.k_hat) + ")";
        });

    py::class_<PulseCurve>(m, "PulseCurve")
        .def_readonly("d", &PulseCurve::d)
        .def_readonly("dtilde", &PulseCurve::dtilde)
        .def_readonly("t", &PulseCurve::t)
        .def_readonly("alpha", &PulseCurve::alpha);

    m.def("default_config",
          [](std::size_t n, const std::string& target) {
              return default_config(n, target_from_string(target));
          },
          py::arg("n"), py::arg("target") = "mean");

    m.def("curves",
          [](const std::vector<double>& x, const std::string& target, std::optional<int> alpha,
             std::optional<double> ridge, double tau, const std::string& ridge_scaling) {
              const Series s(x);
              return pulse_curve(s, make_config(s.size(), target, alpha, ridge, tau,
                                                ridge_scaling));
          },
          py::arg("x"), py::arg("target") = "mean", py::arg("alpha") = std::nullopt,
          py::arg("ridge") = std::nullopt, py::arg("tau") = 0.5,
          py::arg("ridge_scaling") = "literal",
          "Moving-difference, double-average and ridge-ratio curves of a series");

    m.def("detect",
          [](const std::vector<double>& x, const std::string& target, std::optional<int> alpha,
             std::optional<double> ridge, double tau, const std::string& ridge_scaling,
             bool iterative) {
              const Series s(x);
              const DetectorConfig cfg =
                  make_config(s.size(), target, alpha, ridge, tau, ridge_scaling);
              return iterative ? detect_iterative(s, cfg) : detect(s, cfg);
          },
          py::arg("x"), py::arg("target") = "mean", py::arg("alpha") = std::nullopt,
          py::arg("ridge") = std::nullopt, py::arg("tau") = 0.5,
          py::arg("ridge_scaling") = "literal", py::arg("iterative") = false,
          "Detect change points; returns a ChangePointEstimate");

    m.def("sample_model",
          [](const std::string& model, int scenario, std::uint64_t seed) {
              auto [series, truth] = sample_series(model_by_name(model, scenario), seed);
              return py::make_tuple(series.values(), truth.boundaries);
          },
          py::arg("model"), py::arg("scenario") = 1, py::arg("seed") = 0,
          "Draw one replication of a named synthetic model; returns (values, boundaries)");

    m.def("run_replications",
          [](const std::string& model, int scenario, int reps, std::uint64_t seed, bool iterative,
             int threads) {
              const ReplicationReport r =
                  run_replications(model_by_name(model, scenario),
                                   iterative ? Policy::iterative : Policy::plain, reps, seed,
                                   threads);
              py::dict out;
              out["buckets"] = r.khat_minus_k;
              out["bucket0_fraction"] = r.bucket0_fraction();
              out["median_location_error"] = r.median_location_error();
              out["failures"] = r.failures;
              out["row"] = tabulate(r);
              return out;
          },
          py::arg("model"), py::arg("scenario") = 1, py::arg("reps") = 100, py::arg("seed") = 0,
          py::arg("iterative") = false, py::arg("threads") = 1,
          "Seeded Monte-Carlo replications; returns a summary dict");
}
