#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sqeiar/grid.hpp"
#include "sqeiar/model.hpp"

namespace sqeiar {

/// Everything needed to pose one optimal-control problem.
struct Problem {
    ModelParams params;
    CostWeights weights;
    QuarantineRegions regions;
    Grid grid;
    InitialState initial;
};

/// Discrete cost functional.
///
/// The epidemic cost rho1*chi*S + rho3*E + rho4*A + rho5*I is integrated with
/// the trapezoid rule in space and time. The control cost
/// (sigma1/2) u^2 + (sigma2/2) chi*v^2 uses the trapezoid rule in space and
/// the left-point rule in time (rows 0..nt-1), because forward_solve holds the
/// control of row m constant over step [t_m, t_m+1).
double cost_functional(const StateTrajectory& state, const ControlPair& controls, const CostWeights& weights,
                       const QuarantineRegions& regions, const Grid& grid);

/// Pointwise projection of the stationarity conditions onto the admissible box:
/// u = clamp(I (p5 - p6) / sigma1, 0, 1), v = clamp(chi S (p1 - p2) / sigma2, 0, 1/n).
ControlPair project_controls(const StateTrajectory& state, const AdjointTrajectory& adjoint, const CostWeights& weights,
                             const QuarantineRegions& regions, const Grid& grid);

/// Gradient integrands: grad_u = sigma1 u - I (p5 - p6), grad_v = sigma2 v - chi S (p1 - p2).
/// Paired with control_inner_product they give the exact directional derivative
/// of cost_functional through forward_solve.
ControlPair cost_gradient(const StateTrajectory& state, const AdjointTrajectory& adjoint, const ControlPair& controls,
                          const CostWeights& weights, const QuarantineRegions& regions, const Grid& grid);

/// Inner product matching cost_functional's control quadrature: trapezoid in
/// space, left-point in time; the quarantine part is restricted to the regions.
double control_inner_product(const ControlPair& a, const ControlPair& b, const QuarantineRegions& regions);

struct SweepOptions {
    double tolerance = 1e-4;
    std::size_t max_iterations = 200;
    double relaxation = 0.5;
};

struct SweepReport {
    std::size_t iterations = 0;
    std::vector<double> cost_history;  ///< J of every evaluated iterate, iterations + 1 entries
    double final_update_norm = 0.0;    ///< relaxation * final_residual
    double final_residual = 0.0;       ///< ||w - project(w)||_inf of the returned controls
    bool converged = false;
    double relaxation = 0.5;
};

struct SweepResult {
    StateTrajectory state;
    AdjointTrajectory adjoint;
    ControlPair controls;
    SweepReport report;
};

/// Called with (iteration, controls) for every iterate, starting with the
/// initial guess at iteration 0.
using SweepObserver = std::function<void(std::size_t, const ControlPair&)>;

/// Forward-backward sweep: forward solve, adjoint solve, projection, then the
/// relaxed update w <- (1 - r) w + r project(w). Stops once the projection
/// residual of the current iterate is within tolerance (so the applied update
/// would also be) or after max_iterations updates. The returned state and
/// adjoint belong to the returned controls. Non-convergence is reported, not
/// thrown.
SweepResult fbsm_solve(const Problem& problem, const ControlPair& initial_controls, const SweepOptions& options = {},
                       const SweepObserver& observer = {});

}  // namespace sqeiar
