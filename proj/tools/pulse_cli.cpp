#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pulse/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"PULSE ridge-ratio change-point detector"};
    app.require_subcommand(1);

    pulse::DetectOptions dopt;
    CLI::App* det = app.add_subcommand("detect", "Detect change points in a CSV series");
    det->add_option("--input", dopt.input, "input CSV (one value column)")->required();
    det->add_option("--target", dopt.target, "mean|variance")->required();
    int alpha = 0;
    double ridge = 0.0;
    CLI::Option* alpha_opt = det->add_option("--alpha", alpha, "moving window (even, >= 4)");
    CLI::Option* ridge_opt = det->add_option("--ridge", ridge, "ridge constant c > 0");
    det->add_option("--tau", dopt.tau, "threshold in (0,1)")->default_val(0.5);
    det->add_option("--ridge-scaling", dopt.ridge_scaling, "literal|scaled")
        ->default_val("literal");
    det->add_flag("--iterative", dopt.iterative, "recursive short-spacing detection");
    std::string output, curve;
    CLI::Option* out_opt = det->add_option("--output", output, "write result JSON here");
    CLI::Option* curve_opt = det->add_option("--curve", curve, "write curve CSV here");

    pulse::SimulateOptions sopt;
    CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo replications of a synthetic model");
    sim->add_option("--model", sopt.model, "cp|cp-local|var")->required();
    sim->add_option("--scenario", sopt.scenario, "error scenario 1..4")->required();
    sim->add_option("--reps", sopt.reps, "number of replications")->required();
    sim->add_option("--seed", sopt.seed, "base seed")->required();
    sim->add_flag("--iterative", sopt.iterative, "use the recursive detector");
    std::string sim_out, var_levels, var_bounds;
    CLI::Option* sim_out_opt = sim->add_option("--out", sim_out, "write report here (.json or CSV)");
    CLI::Option* lv_opt = sim->add_option("--var-levels", var_levels, "sigma levels, comma separated");
    CLI::Option* bd_opt =
        sim->add_option("--var-boundaries", var_bounds, "boundaries, comma separated");
    sim->add_option("--threads", sopt.threads, "worker count (default: PULSE_THREADS or 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (det->parsed()) {
        if (*alpha_opt) dopt.alpha = alpha;
        if (*ridge_opt) dopt.ridge = ridge;
        if (*out_opt) dopt.output = output;
        if (*curve_opt) dopt.curve_path = curve;
        return pulse::run_detect_command(dopt, std::cout, std::cerr);
    }
    if (*sim_out_opt) sopt.out = sim_out;
    if (*lv_opt) sopt.var_levels = var_levels;
    if (*bd_opt) sopt.var_boundaries = var_bounds;
    return pulse::run_simulate_command(sopt, std::cout, std::cerr);
}
