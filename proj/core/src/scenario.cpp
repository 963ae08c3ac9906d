#include "sqeiar/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <system_error>

#include <nlohmann/json.hpp>

#include "sqeiar/errors.hpp"
#include "sqeiar/output.hpp"
#include "sqeiar/pde.hpp"

namespace sqeiar {

bool RunSummary::all_checks_passed() const {
    for (const auto* run : {&baseline, &optimal}) {
        if (!run->has_value()) continue;
        for (const auto& c : (*run)->checks) {
            if (!c.passed) return false;
        }
    }
    return true;
}

namespace {

ScenarioRun finish_run(std::string name, StateTrajectory state, ControlPair controls, const Problem& pb) {
    ScenarioRun run;
    run.name = std::move(name);
    run.metrics = extract_metrics(state, pb.grid);
    run.cost = cost_functional(state, controls, pb.weights, pb.regions, pb.grid);
    run.checks.push_back(mass_balance_check(state, pb.params, pb.grid));
    run.checks.push_back(positivity_check(state));
    run.state = std::move(state);
    run.controls = std::move(controls);
    return run;
}

ScenarioRun run_baseline(const Problem& pb) {
    ControlPair zero = ControlPair::zero(pb.grid);
    StateTrajectory state = forward_solve(pb.initial, zero, pb.params, pb.regions, pb.grid);
    return finish_run("baseline", std::move(state), std::move(zero), pb);
}

ScenarioRun run_optimal(const Problem& pb, const SweepOptions& options) {
    const auto mask = region_mask(pb.grid, pb.regions);
    std::size_t bad_iterates = 0;
    std::string first_violation = "every iterate admissible";
    auto observer = [&](std::size_t iter, const ControlPair& w) {
        if (auto bad = admissibility_violation(w, mask, pb.regions.quarantine_bound())) {
            if (bad_iterates++ == 0) first_violation = "iterate " + std::to_string(iter) + ": " + *bad;
        }
    };
    SweepResult result = fbsm_solve(pb, ControlPair::zero(pb.grid), options, observer);
    ScenarioRun run = finish_run("optimal", std::move(result.state), std::move(result.controls), pb);
    run.checks.push_back(make_report("control_admissibility", static_cast<double>(bad_iterates), 0.0, 0.0,
                                     std::to_string(result.report.iterations + 1) + " iterates; " + first_violation));
    run.checks.push_back(make_report("optimality_residual", result.report.final_residual, 0.0, options.tolerance,
                                     result.report.converged ? "converged" : "not converged"));
    run.sweep = std::move(result.report);
    return run;
}

template <typename Fn>
ScenarioRun with_context(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        throw ScenarioError(std::string(name) + " scenario failed: " + e.what());
    }
}

double max_initial_density(const InitialState& initial) {
    double best = 0.0;
    for (std::size_t j = 0; j < initial[0].size(); ++j) {
        double total = 0.0;
        for (const auto& profile : initial) total += profile[j];
        best = std::max(best, total);
    }
    return best;
}

}  // namespace

RunSummary solve_scenario(const ScenarioConfig& config) {
    config.validate();
    const Problem pb = make_problem(config);
    RunSummary summary;
    summary.mode = config.mode;
    summary.weights = config.weights;
    summary.grid = config.grid;
    if (auto warning = reaction_step_warning(pb.grid, pb.params, pb.regions, max_initial_density(pb.initial))) {
        summary.warnings.push_back(*warning);
    }

    const bool want_baseline = config.mode != RunMode::kOptimal;
    const bool want_optimal = config.mode != RunMode::kBaseline;
    // The two runs share only immutable inputs.
    std::future<ScenarioRun> baseline;
    if (want_baseline) {
        baseline = std::async(std::launch::async, [&] { return with_context("baseline", [&] { return run_baseline(pb); }); });
    }
    if (want_optimal) {
        summary.optimal = with_context("optimal", [&] { return run_optimal(pb, config.sweep); });
    }
    if (want_baseline) summary.baseline = baseline.get();
    if (summary.baseline && summary.optimal) {
        summary.deaths_averted = summary.baseline->metrics.deaths - summary.optimal->metrics.deaths;
    }
    return summary;
}

namespace {

nlohmann::json report_json(const CheckReport& r) {
    return {{"name", r.name},   {"passed", r.passed}, {"measured", r.measured},
            {"lower", r.lower}, {"bound", r.bound},   {"detail", r.detail}};
}

nlohmann::json run_json(const ScenarioRun& run) {
    nlohmann::json j;
    j["cost"] = run.cost;
    j["initial_total_population"] = run.metrics.initial_total_population;
    j["final_total_population"] = run.metrics.final_total_population;
    j["deaths"] = run.metrics.deaths;
    nlohmann::json peaks = nlohmann::json::object();
    for (std::size_t c = 0; c < kCompartments; ++c) {
        peaks[kCompartmentNames[c]] = {{"value", run.metrics.peak_value[c]}, {"time", run.metrics.peak_time[c]}};
    }
    j["peaks"] = peaks;
    nlohmann::json finals = nlohmann::json::object();
    for (std::size_t c = 0; c < kCompartments; ++c) finals[kCompartmentNames[c]] = run.metrics.aggregates[c].back();
    j["final_aggregates"] = finals;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : run.checks) checks.push_back(report_json(c));
    j["checks"] = checks;
    if (run.sweep) {
        j["sweep"] = {{"iterations", run.sweep->iterations},
                      {"converged", run.sweep->converged},
                      {"final_update_norm", run.sweep->final_update_norm},
                      {"final_residual", run.sweep->final_residual},
                      {"relaxation", run.sweep->relaxation},
                      {"cost_history", run.sweep->cost_history}};
    }
    return j;
}

}  // namespace

std::string summary_json(const RunSummary& s) {
    nlohmann::json j;
    j["mode"] = std::string(to_string(s.mode));
    j["weights"] = {{"rho1", s.weights.rho1},     {"rho3", s.weights.rho3},    {"rho4", s.weights.rho4},
                    {"rho5", s.weights.rho5},     {"sigma1", s.weights.sigma1}, {"sigma2", s.weights.sigma2}};
    j["grid"] = {{"x_min", s.grid.x_min}, {"x_max", s.grid.x_max}, {"nx", s.grid.nx},
                 {"tau", s.grid.tau},     {"nt", s.grid.nt},       {"dt", s.grid.dt()}};
    j["warnings"] = s.warnings;
    nlohmann::json scenarios = nlohmann::json::object();
    if (s.baseline) scenarios["baseline"] = run_json(*s.baseline);
    if (s.optimal) scenarios["optimal"] = run_json(*s.optimal);
    j["scenarios"] = scenarios;
    if (s.deaths_averted) j["deaths_averted"] = *s.deaths_averted;
    j["all_checks_passed"] = s.all_checks_passed();
    return j.dump(2) + "\n";
}

void write_outputs(const RunSummary& summary, const std::filesystem::path& dir, std::size_t stride) {
    namespace fs = std::filesystem;
    std::vector<fs::path> created;
    auto make_dir = [&](const fs::path& p) {
        std::error_code ec;
        if (fs::exists(p, ec)) return;
        if (!fs::create_directories(p, ec) || ec) throw std::runtime_error("cannot create directory " + p.string());
        created.push_back(p);
    };
    auto write_file = [&](const fs::path& p, auto&& writer) {
        std::error_code ec;
        if (!fs::exists(p, ec)) created.push_back(p);
        writer(p);
    };
    try {
        make_dir(dir);
        for (const auto* run : {&summary.baseline, &summary.optimal}) {
            if (!run->has_value()) continue;
            const ScenarioRun& r = **run;
            const fs::path sub = dir / r.name;
            make_dir(sub);
            for (std::size_t c = 0; c < kCompartments; ++c) {
                write_file(sub / (std::string(kCompartmentNames[c]) + ".csv"),
                           [&](const fs::path& p) { write_field_csv(p, r.state[c], stride); });
            }
            write_file(sub / "u.csv", [&](const fs::path& p) { write_field_csv(p, r.controls.u, stride); });
            write_file(sub / "v.csv", [&](const fs::path& p) { write_field_csv(p, r.controls.v, stride); });
            write_file(sub / "aggregates.csv", [&](const fs::path& p) { write_aggregates_csv(p, r.metrics); });
        }
        write_file(dir / "summary.json", [&](const fs::path& p) {
            std::ofstream out(p, std::ios::binary | std::ios::trunc);
            out << summary_json(summary);
            out.flush();
            if (!out) throw std::runtime_error("failed writing " + p.string());
        });
    } catch (...) {
        for (auto it = created.rbegin(); it != created.rend(); ++it) {
            std::error_code ec;
            fs::remove(*it, ec);
        }
        throw;
    }
}

RunSummary run_scenario(const ScenarioConfig& config) {
    RunSummary summary = solve_scenario(config);
    write_outputs(summary, config.output_dir, config.output_stride);
    return summary;
}

std::vector<CheckReport> run_oracle_suite(const ScenarioConfig& config, std::size_t nx, std::size_t nt) {
    ScenarioConfig coarse = config;
    coarse.grid.nx = nx;
    coarse.grid.nt = nt;
    coarse.validate();
    const Problem pb = make_problem(coarse);
    const auto mask = region_mask(pb.grid, pb.regions);

    ControlPair base = ControlPair::zero(pb.grid);
    for (std::size_t m = 0; m < pb.grid.rows(); ++m) {
        for (std::size_t j = 0; j < pb.grid.nx; ++j) {
            base.u(m, j) = 0.3;
            if (mask[j]) base.v(m, j) = 0.3 * pb.regions.quarantine_bound();
        }
    }

    OracleOptions options;
    options.seed = config.seed;
    std::vector<CheckReport> out = gradient_oracle(base, pb, {1e-3, 1e-4}, options);
    const ControlPair direction = random_direction(pb.grid, pb.regions, config.seed);
    out.push_back(sensitivity_oracle(pb, base, direction, {1e-2, 1e-3}));
    const StateTrajectory state = forward_solve(pb.initial, base, pb.params, pb.regions, pb.grid);
    out.push_back(mass_balance_check(state, pb.params, pb.grid));
    out.push_back(positivity_check(state));
    return out;
}

}  // namespace sqeiar
