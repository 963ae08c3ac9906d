#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqeiar/config.hpp"
#include "sqeiar/control.hpp"
#include "sqeiar/oracles.hpp"

namespace sqeiar {

/// A solver failure annotated with the scenario it happened in.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioRun {
    std::string name;
    StateTrajectory state;
    ControlPair controls;
    RunMetrics metrics;
    double cost = 0.0;
    std::vector<CheckReport> checks;
    std::optional<SweepReport> sweep;  ///< only for the optimal-control run
};

struct RunSummary {
    RunMode mode = RunMode::kBoth;
    CostWeights weights;
    Grid grid;
    std::optional<ScenarioRun> baseline;
    std::optional<ScenarioRun> optimal;
    std::optional<double> deaths_averted;  ///< deaths(baseline) - deaths(optimal), mode both only
    std::vector<std::string> warnings;

    bool all_checks_passed() const;
};

/// Runs the requested scenarios without writing anything. Baseline uses
/// u = v = 0; optimal runs the forward-backward sweep from zero controls.
/// Both runs get mass-balance and positivity checks; the optimal run also
/// gets control-admissibility (every iterate) and optimality-residual checks.
RunSummary solve_scenario(const ScenarioConfig& config);

/// Writes per-scenario CSVs under <dir>/<scenario>/ and <dir>/summary.json.
/// Files created by a failed call are removed before the error propagates.
void write_outputs(const RunSummary& summary, const std::filesystem::path& dir, std::size_t stride);

/// solve_scenario followed by write_outputs into config.output_dir.
RunSummary run_scenario(const ScenarioConfig& config);

/// The summary as a JSON document.
std::string summary_json(const RunSummary& summary);

/// Fast verification on a coarse copy of the scenario (nx = 21, nt = 300 by
/// default): gradient and sensitivity oracles around interior controls, plus
/// mass balance and positivity of the coarse forward run.
std::vector<CheckReport> run_oracle_suite(const ScenarioConfig& config, std::size_t nx = 21, std::size_t nt = 300);

}  // namespace sqeiar
