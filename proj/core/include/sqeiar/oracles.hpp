#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sqeiar/control.hpp"
#include "sqeiar/grid.hpp"
#include "sqeiar/model.hpp"

namespace sqeiar {

/// Outcome of one verification check: passed iff lower <= measured <= bound.
struct CheckReport {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
    double lower = -std::numeric_limits<double>::infinity();
    std::string detail;
};

/// Builds a report whose pass flag follows from the band.
CheckReport make_report(std::string name, double measured, double lower, double upper, std::string detail = {});

/// Spatial aggregates and derived statistics of one run.
struct RunMetrics {
    std::vector<double> times;
    /// aggregates[c][m]: trapezoid integral of compartment c at row m.
    std::array<std::vector<double>, kCompartments> aggregates;
    std::vector<double> total;  ///< sum of the six aggregates per row
    std::array<double, kCompartments> peak_value{};
    std::array<double, kCompartments> peak_time{};
    double initial_total_population = 0.0;
    double final_total_population = 0.0;
    double deaths = 0.0;  ///< initial minus final total population
};

RunMetrics extract_metrics(const StateTrajectory& traj, const Grid& grid);

enum class Crossing { kBelow, kAbove };

/// First sampled time at which the aggregate of `compartment` is strictly below
/// (or above) `level`; empty when it never happens.
std::optional<double> time_to_threshold(const RunMetrics& metrics, std::size_t compartment, double level,
                                        Crossing direction);

/// Largest per-step residual |delta(int N) - dt (alpha - 1) f int I| over the
/// initial population. Passes below 1e-8.
CheckReport mass_balance_check(const StateTrajectory& traj, const ModelParams& params, const Grid& grid,
                               double tolerance = 1e-8);

/// Most negative entry over all compartments, rows and nodes. Passes when it
/// is at least -1e-10 times the initial population.
CheckReport positivity_check(const StateTrajectory& traj, double relative_slack = 1e-10);

struct OracleOptions {
    std::size_t directions = 5;
    std::uint64_t seed = 42;
    /// When non-empty these directions are used instead of random ones.
    std::vector<ControlPair> explicit_directions;
};

/// Random admissible direction: uniform in the control box, mean-centred, and
/// with the quarantine part masked to the regions.
ControlPair random_direction(const Grid& grid, const QuarantineRegions& regions, std::uint64_t seed);

/// Compares the adjoint gradient with finite differences of cost_functional
/// along several directions. Returns two reports:
///  - "gradient_accuracy": max relative error of the central difference at the
///    smallest epsilon, bound 1e-2;
///  - "gradient_decay": one-sided difference errors across the epsilon ladder,
///    every consecutive ratio must lie in [5, 20] (first-order decay).
/// Throws ContractError if some w +/- eps*h leaves the admissible box.
std::vector<CheckReport> gradient_oracle(const ControlPair& controls, const Problem& problem,
                                         const std::vector<double>& epsilons, const OracleOptions& options = {});

/// Compares sensitivity_solve with divided differences of forward_solve in the
/// discrete L2 norm. Every consecutive error ratio must lie in [5, 20]; a zero
/// direction must match exactly. Throws ContractError if w + eps*h leaves the
/// admissible box.
CheckReport sensitivity_oracle(const Problem& problem, const ControlPair& controls, const ControlPair& direction,
                               const std::vector<double>& epsilons);

/// Discrete L2 norm over space-time and all six fields (trapezoid weights).
double l2_norm(const FieldBundle& fields);

}  // namespace sqeiar
