#include "sqeiar/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqeiar/errors.hpp"
#include "sqeiar/pde.hpp"

namespace sqeiar {

namespace {

void require_grid(const Grid& expected, const Grid& actual, const char* what) {
    if (!(expected == actual)) throw ContractError(std::string(what) + " is defined on a different grid");
}

}  // namespace

double cost_functional(const StateTrajectory& state, const ControlPair& controls, const CostWeights& w,
                       const QuarantineRegions& regions, const Grid& grid) {
    require_grid(grid, state.grid(), "state trajectory");
    require_grid(grid, controls.u.grid(), "treatment control");
    require_grid(grid, controls.v.grid(), "quarantine control");
    const auto mask = region_mask(grid, regions);
    const auto ws = grid.space_weights();
    const auto wt = grid.time_weights();
    const double dt = grid.dt();

    double epidemic = 0.0;
    double control = 0.0;
    for (std::size_t m = 0; m < grid.rows(); ++m) {
        double row_epidemic = 0.0;
        double row_control = 0.0;
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const double chi = mask[j] ? 1.0 : 0.0;
            row_epidemic += ws[j] * (w.rho1 * chi * state[kS](m, j) + w.rho3 * state[kE](m, j) +
                                     w.rho4 * state[kA](m, j) + w.rho5 * state[kI](m, j));
            const double u = controls.u(m, j);
            const double v = controls.v(m, j);
            row_control += ws[j] * (0.5 * w.sigma1 * u * u + 0.5 * w.sigma2 * chi * v * v);
        }
        epidemic += wt[m] * row_epidemic;
        if (m < grid.nt) control += dt * row_control;
    }
    return epidemic + control;
}

ControlPair project_controls(const StateTrajectory& state, const AdjointTrajectory& adjoint, const CostWeights& w,
                             const QuarantineRegions& regions, const Grid& grid) {
    require_grid(grid, state.grid(), "state trajectory");
    require_grid(grid, adjoint.grid(), "adjoint trajectory");
    const auto mask = region_mask(grid, regions);
    const double v_max = regions.quarantine_bound();
    ControlPair out = ControlPair::zero(grid);
    for (std::size_t m = 0; m < grid.rows(); ++m) {
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const double raw_u = state[kI](m, j) * (adjoint[kI](m, j) - adjoint[kR](m, j)) / w.sigma1;
            out.u(m, j) = std::clamp(raw_u, 0.0, 1.0);
            if (mask[j]) {
                const double raw_v = state[kS](m, j) * (adjoint[kS](m, j) - adjoint[kQ](m, j)) / w.sigma2;
                out.v(m, j) = std::clamp(raw_v, 0.0, v_max);
            }
        }
    }
    return out;
}

ControlPair cost_gradient(const StateTrajectory& state, const AdjointTrajectory& adjoint, const ControlPair& controls,
                          const CostWeights& w, const QuarantineRegions& regions, const Grid& grid) {
    require_grid(grid, state.grid(), "state trajectory");
    require_grid(grid, adjoint.grid(), "adjoint trajectory");
    require_grid(grid, controls.u.grid(), "treatment control");
    require_grid(grid, controls.v.grid(), "quarantine control");
    const auto mask = region_mask(grid, regions);
    ControlPair grad = ControlPair::zero(grid);
    for (std::size_t m = 0; m < grid.rows(); ++m) {
        for (std::size_t j = 0; j < grid.nx; ++j) {
            grad.u(m, j) =
                w.sigma1 * controls.u(m, j) - state[kI](m, j) * (adjoint[kI](m, j) - adjoint[kR](m, j));
            if (mask[j]) {
                grad.v(m, j) =
                    w.sigma2 * controls.v(m, j) - state[kS](m, j) * (adjoint[kS](m, j) - adjoint[kQ](m, j));
            }
        }
    }
    return grad;
}

double control_inner_product(const ControlPair& a, const ControlPair& b, const QuarantineRegions& regions) {
    const Grid& grid = a.grid();
    require_grid(grid, b.grid(), "second control pair");
    const auto mask = region_mask(grid, regions);
    const auto ws = grid.space_weights();
    double total = 0.0;
    for (std::size_t m = 0; m < grid.nt; ++m) {
        double row = 0.0;
        for (std::size_t j = 0; j < grid.nx; ++j) {
            row += ws[j] * a.u(m, j) * b.u(m, j);
            if (mask[j]) row += ws[j] * a.v(m, j) * b.v(m, j);
        }
        total += grid.dt() * row;
    }
    return total;
}

SweepResult fbsm_solve(const Problem& pb, const ControlPair& initial_controls, const SweepOptions& options,
                       const SweepObserver& observer) {
    if (!(options.tolerance > 0.0)) throw ContractError("sweep tolerance must be positive");
    if (options.max_iterations < 1) throw ContractError("sweep max_iterations must be at least 1");
    if (!(options.relaxation > 0.0 && options.relaxation <= 1.0)) {
        throw ContractError("sweep relaxation must lie in (0, 1]");
    }
    pb.weights.validate();

    SweepReport report;
    report.relaxation = options.relaxation;
    ControlPair current = initial_controls;
    for (std::size_t iter = 0;; ++iter) {
        if (observer) observer(iter, current);
        StateTrajectory state = forward_solve(pb.initial, current, pb.params, pb.regions, pb.grid);
        AdjointTrajectory adjoint = adjoint_solve(state, current, pb.weights, pb.params, pb.regions, pb.grid);
        report.cost_history.push_back(cost_functional(state, current, pb.weights, pb.regions, pb.grid));
        ControlPair projected = project_controls(state, adjoint, pb.weights, pb.regions, pb.grid);
        const double residual = control_distance(projected, current);
        report.iterations = iter;
        report.final_residual = residual;
        report.final_update_norm = options.relaxation * residual;
        report.converged = residual <= options.tolerance;
        if (report.converged || iter == options.max_iterations) {
            return {std::move(state), std::move(adjoint), std::move(current), std::move(report)};
        }
        const double r = options.relaxation;
        // Convex combinations stay in the box; the clamp only absorbs rounding.
        auto mix = [r](std::span<double> old, std::span<const double> target, double upper) {
            for (std::size_t i = 0; i < old.size(); ++i) {
                old[i] = std::clamp((1.0 - r) * old[i] + r * target[i], 0.0, upper);
            }
        };
        mix(current.u.values(), projected.u.values(), 1.0);
        mix(current.v.values(), projected.v.values(), pb.regions.quarantine_bound());
    }
}

}  // namespace sqeiar
