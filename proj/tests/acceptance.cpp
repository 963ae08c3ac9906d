// Acceptance suite: one PASS/FAIL line per criterion on the default scenario.
// Exit status is nonzero when any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sqeiar/config.hpp"
#include "sqeiar/oracles.hpp"
#include "sqeiar/pde.hpp"
#include "sqeiar/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sqeiar;

int failures = 0;

void line(const std::string& id, const std::string& what, bool ok, const std::string& measured) {
    if (!ok) ++failures;
    std::printf("%s  [%s] %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), what.c_str(), measured.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

template <typename Fn>
double seconds(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const CheckReport& find_check(const ScenarioRun& run, const std::string& name) {
    for (const auto& c : run.checks) {
        if (c.name == name) return c;
    }
    throw std::runtime_error("missing check " + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void mass_and_positivity(const RunSummary& s) {
    for (const auto* run : {&*s.baseline, &*s.optimal}) {
        const auto& mb = find_check(*run, "mass_balance");
        line("1", "mass balance (" + run->name + ")", mb.measured <= 1e-8,
             "max residual / N(0) = " + fmt(mb.measured) + " (bound 1e-8)");
    }
    for (const auto* run : {&*s.baseline, &*s.optimal}) {
        const auto& pos = find_check(*run, "positivity");
        line("2", "positivity (" + run->name + ")", pos.measured >= -1e-10 * run->metrics.initial_total_population,
             "most negative value = " + fmt(pos.measured) + " (bound " +
                 fmt(-1e-10 * run->metrics.initial_total_population) + ")");
    }
}

void oracles(const ScenarioConfig& defaults) {
    ScenarioConfig coarse = defaults;
    coarse.grid.nx = 21;
    coarse.grid.nt = 300;
    const Problem pb = make_problem(coarse);
    const auto mask = region_mask(pb.grid, pb.regions);
    ControlPair base = ControlPair::zero(pb.grid);
    for (std::size_t m = 0; m < pb.grid.rows(); ++m) {
        for (std::size_t j = 0; j < pb.grid.nx; ++j) {
            base.u(m, j) = 0.3;
            if (mask[j]) base.v(m, j) = 0.3 * pb.regions.quarantine_bound();
        }
    }
    std::vector<CheckReport> grad;
    const double t = seconds([&] {
        OracleOptions opts;
        opts.directions = 5;
        opts.seed = defaults.seed;
        grad = gradient_oracle(base, pb, {1e-3, 1e-4}, opts);
    });
    line("3", "gradient relative error at eps=1e-4", grad[0].measured < 1e-2,
         fmt(grad[0].measured) + " (bound 1e-2)");
    line("3", "gradient error ratio eps=1e-3 / eps=1e-4", grad[1].passed,
         "worst ratio " + fmt(grad[1].measured) + " (band [5, 20]); " + grad[1].detail);
    line("3", "gradient oracle runtime", t < 30.0, fmt(t) + " s (bound 30 s)");

    const auto dir = random_direction(pb.grid, pb.regions, defaults.seed);
    const auto sens = sensitivity_oracle(pb, base, dir, {1e-2, 1e-3});
    line("4", "sensitivity L2 error ratio eps=1e-2 / eps=1e-3", sens.measured >= 5.0 && sens.measured <= 20.0,
         fmt(sens.measured) + " (band [5, 20]); " + sens.detail);
}

void uncontrolled(const ScenarioRun& b) {
    const auto& m = b.metrics;
    const auto s_low = time_to_threshold(m, kS, 80.0, Crossing::kBelow);
    line("5", "aggregate S below 80 by day 10", s_low && *s_low <= 10.0,
         s_low ? "first below at t = " + fmt(*s_low) : "never below 80");
    line("5", "E peak value in [1800, 3500]", m.peak_value[kE] >= 1800.0 && m.peak_value[kE] <= 3500.0,
         fmt(m.peak_value[kE]));
    line("5", "E peak time in [5, 15] days", m.peak_time[kE] >= 5.0 && m.peak_time[kE] <= 15.0,
         "t = " + fmt(m.peak_time[kE]));
    line("5", "A peak value in [2000, 4000]", m.peak_value[kA] >= 2000.0 && m.peak_value[kA] <= 4000.0,
         fmt(m.peak_value[kA]));
    line("5", "A peak time in [5, 20] days", m.peak_time[kA] >= 5.0 && m.peak_time[kA] <= 20.0,
         "t = " + fmt(m.peak_time[kA]));
    line("5", "I peak value above 1800", m.peak_value[kI] > 1800.0, fmt(m.peak_value[kI]));
    line("5", "I peak time in [8, 20] days", m.peak_time[kI] >= 8.0 && m.peak_time[kI] <= 20.0,
         "t = " + fmt(m.peak_time[kI]));
    line("5", "final R above 8000", m.aggregates[kR].back() > 8000.0, fmt(m.aggregates[kR].back()));
}

double aggregate_at(const RunMetrics& m, std::size_t c, double t) {
    for (std::size_t i = 0; i < m.times.size(); ++i) {
        if (m.times[i] >= t - 1e-9) return m.aggregates[c][i];
    }
    return m.aggregates[c].back();
}

void controlled(const RunSummary& s) {
    const auto& m = s.optimal->metrics;
    line("6", "E peak below 1500", m.peak_value[kE] < 1500.0, fmt(m.peak_value[kE]));
    line("6", "A peak below 1500", m.peak_value[kA] < 1500.0, fmt(m.peak_value[kA]));
    const double i25 = aggregate_at(m, kI, 25.0);
    line("6", "aggregate I below 50 at day 25", i25 < 50.0, fmt(i25));
    line("6", "aggregate Q exceeds 3000", m.peak_value[kQ] >= 3000.0, "peak " + fmt(m.peak_value[kQ]));
    line("6", "final R at most 4500", m.aggregates[kR].back() <= 4500.0, fmt(m.aggregates[kR].back()));
    line("6", "deaths averted at least 40", *s.deaths_averted >= 40.0,
         fmt(*s.deaths_averted) + " (baseline " + fmt(s.baseline->metrics.deaths) + ", optimal " +
             fmt(m.deaths) + ")");
}

void optimality(const RunSummary& s) {
    const auto& rep = *s.optimal->sweep;
    line("7", "sweep converged with residual <= 1e-4", rep.converged && rep.final_residual <= 1e-4,
         fmt(rep.final_residual) + " after " + std::to_string(rep.iterations) + " iterations");
    const double j_zero = rep.cost_history.front();
    line("7", "J(optimal) < J(zero controls)", s.optimal->cost < j_zero,
         fmt(s.optimal->cost) + " < " + fmt(j_zero));
    const auto& adm = find_check(*s.optimal, "control_admissibility");
    line("8", "every sweep iterate admissible", adm.passed && adm.measured == 0.0, adm.detail);
}

void equilibria(const ScenarioConfig& defaults) {
    ScenarioConfig zero = defaults;
    zero.grid.nx = 21;
    zero.grid.nt = 300;
    for (auto& name : zero.initial) name = "zero";
    Problem pb = make_problem(zero);
    const auto traj = forward_solve(pb.initial, ControlPair::zero(pb.grid), pb.params, pb.regions, pb.grid);
    double worst = 0.0;
    for (std::size_t c = 0; c < kCompartments; ++c) worst = std::max(worst, traj[c].max_abs());
    line("9", "zero data gives zero trajectory", worst == 0.0, "max |y| = " + fmt(worst));
    const double cost = cost_functional(traj, ControlPair::zero(pb.grid), pb.weights, pb.regions, pb.grid);
    line("9", "zero data gives zero cost", cost == 0.0, "J = " + fmt(cost));
    const auto sweep = fbsm_solve(pb, ControlPair::zero(pb.grid), zero.sweep);
    const double wmax = std::max(sweep.controls.u.max_abs(), sweep.controls.v.max_abs());
    line("9", "zero data gives zero controls at convergence", sweep.report.converged && wmax == 0.0,
         "max |w| = " + fmt(wmax));

    ScenarioConfig uniform = zero;
    uniform.params.beta = uniform.params.delta = uniform.params.mu = uniform.params.xi = 0.0;
    uniform.params.q = 1.0;
    uniform.initial[kS] = "const:1000";
    pb = make_problem(uniform);
    const auto flat = forward_solve(pb.initial, ControlPair::zero(pb.grid), pb.params, pb.regions, pb.grid);
    double drift = 0.0;
    for (double v : flat[kS].values()) drift = std::max(drift, std::abs(v - 1000.0));
    line("9", "transmission-free uniform S constant in time", drift == 0.0, "max |S - S0| = " + fmt(drift));
}

}  // namespace

int main() {
    const ScenarioConfig defaults = parse_config("");
    const fs::path scratch = fs::temp_directory_path() / "sqeiar_acceptance";
    fs::remove_all(scratch);

    std::printf("default scenario: nx=%zu nt=%zu tau=%g, sigma1=%g sigma2=%g (tuned control gains), rho=1\n",
                defaults.grid.nx, defaults.grid.nt, defaults.grid.tau, defaults.weights.sigma1,
                defaults.weights.sigma2);

    ScenarioConfig base_only = defaults;
    base_only.mode = RunMode::kBaseline;
    ScenarioConfig opt_only = defaults;
    opt_only.mode = RunMode::kOptimal;
    const double t_base = seconds([&] { solve_scenario(base_only); });
    const double t_opt = seconds([&] { solve_scenario(opt_only); });
    line("1", "runtime baseline mode", t_base < 10.0, fmt(t_base) + " s (bound 10 s)");
    line("1", "runtime optimal mode", t_opt < 10.0, fmt(t_opt) + " s (bound 10 s)");

    ScenarioConfig first = defaults;
    first.output_dir = scratch / "first";
    const RunSummary summary = run_scenario(first);

    mass_and_positivity(summary);
    oracles(defaults);
    uncontrolled(*summary.baseline);
    controlled(summary);
    optimality(summary);
    equilibria(defaults);

    ScenarioConfig second = defaults;
    second.output_dir = scratch / "second";
    run_scenario(second);
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::recursive_directory_iterator(first.output_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
        ++files;
        const auto rel = fs::relative(entry.path(), first.output_dir);
        if (slurp(entry.path()) != slurp(second.output_dir / rel)) ++differing;
    }
    line("10", "two default runs give byte-identical CSVs", files > 0 && differing == 0,
         std::to_string(files) + " files compared, " + std::to_string(differing) + " differ");
    fs::remove_all(scratch);

    std::printf("%s: %d failing line(s)\n", failures ? "FAILED" : "ALL PASSED", failures);
    return failures ? 1 : 0;
}
