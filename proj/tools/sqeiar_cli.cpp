// sqeiar: simulate the spatial SQEIAR epidemic model and compute optimal
// quarantine/treatment controls.
//
//   sqeiar run [--config FILE] [--mode baseline|optimal|both] [--out DIR]
//   sqeiar check [--config FILE] [--seed N]
//   sqeiar defaults
//
// Exit codes: 0 success, 1 configuration error, 2 solver failure,
// 3 verification-check failure in `check`.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sqeiar/config.hpp"
#include "sqeiar/errors.hpp"
#include "sqeiar/scenario.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCheck = 3;

sqeiar::ScenarioConfig resolve_config(const std::string& path) {
    return path.empty() ? sqeiar::parse_config("") : sqeiar::load_config(path);
}

void print_report(const sqeiar::CheckReport& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(22) << r.name << " measured "
              << std::setprecision(6) << r.measured << " band [" << r.lower << ", " << r.bound << "]  " << r.detail
              << '\n';
}

void print_run(const sqeiar::ScenarioRun& run) {
    std::cout << run.name << ": J = " << std::setprecision(10) << run.cost << ", deaths = " << run.metrics.deaths
              << '\n';
    for (std::size_t c = 0; c < sqeiar::kCompartments; ++c) {
        std::cout << "  peak " << sqeiar::kCompartmentNames[c] << " = " << std::setprecision(6)
                  << run.metrics.peak_value[c] << " at t = " << run.metrics.peak_time[c] << '\n';
    }
    if (run.sweep) {
        std::cout << "  sweep: " << run.sweep->iterations << " iterations, "
                  << (run.sweep->converged ? "converged" : "NOT converged") << ", residual "
                  << run.sweep->final_residual << '\n';
    }
    for (const auto& c : run.checks) {
        std::cout << "  ";
        print_report(c);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spatial SQEIAR epidemic simulation and optimal control"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode;
    std::string out_dir;
    auto* run = app.add_subcommand("run", "Simulate the baseline and/or optimal-control scenario");
    run->add_option("--config", config_path, "Configuration file (defaults when omitted)");
    run->add_option("--mode", mode, "baseline, optimal or both")
        ->check(CLI::IsMember({"baseline", "optimal", "both"}));
    run->add_option("--out", out_dir, "Output directory");

    std::string check_config;
    long long seed = -1;
    auto* check = app.add_subcommand("check", "Run the gradient/sensitivity oracles on a coarse grid");
    check->add_option("--config", check_config, "Configuration file (defaults when omitted)");
    check->add_option("--seed", seed, "Seed for the oracle directions");

    app.add_subcommand("defaults", "Print the fully resolved default configuration");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("defaults")) {
            std::cout << sqeiar::format_config(sqeiar::parse_config(""));
            return 0;
        }
        if (app.got_subcommand("check")) {
            auto cfg = resolve_config(check_config);
            if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
            bool ok = true;
            for (const auto& r : sqeiar::run_oracle_suite(cfg)) {
                print_report(r);
                ok = ok && r.passed;
            }
            return ok ? 0 : kExitCheck;
        }
        auto cfg = resolve_config(config_path);
        if (!mode.empty()) cfg.mode = sqeiar::parse_run_mode(mode);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        const auto summary = sqeiar::run_scenario(cfg);
        for (const auto& w : summary.warnings) std::cerr << "warning: " << w << '\n';
        if (summary.baseline) print_run(*summary.baseline);
        if (summary.optimal) print_run(*summary.optimal);
        if (summary.deaths_averted) {
            std::cout << "deaths averted: " << std::setprecision(6) << *summary.deaths_averted << '\n';
        }
        std::cout << "outputs written to " << cfg.output_dir.string() << '\n';
        return 0;
    } catch (const sqeiar::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}
