#include "sqeiar/pde.hpp"

#include <cmath>
#include <string>

#include "sqeiar/errors.hpp"

namespace sqeiar {

void neumann_laplacian(std::span<const double> row, double dx, std::span<double> out) {
    const std::size_t n = row.size();
    if (n < 3) throw ContractError("neumann_laplacian needs at least 3 nodes (got " + std::to_string(n) + ")");
    if (out.size() != n) throw ContractError("neumann_laplacian: output length differs from input");
    const double inv = 1.0 / (dx * dx);
    out[0] = 2.0 * (row[1] - row[0]) * inv;
    for (std::size_t j = 1; j + 1 < n; ++j) out[j] = (row[j - 1] - 2.0 * row[j] + row[j + 1]) * inv;
    out[n - 1] = 2.0 * (row[n - 2] - row[n - 1]) * inv;
}

std::vector<double> neumann_laplacian(std::span<const double> row, double dx) {
    std::vector<double> out(row.size());
    neumann_laplacian(row, dx, out);
    return out;
}

namespace {

void require_grid(const Grid& expected, const Grid& actual, const char* what) {
    if (!(expected == actual)) throw ContractError(std::string(what) + " is defined on a different grid");
}

void require_controls(const ControlPair& controls, const QuarantineRegions& regions, const Grid& grid,
                      std::span<const std::uint8_t> mask) {
    require_grid(grid, controls.u.grid(), "treatment control");
    require_grid(grid, controls.v.grid(), "quarantine control");
    if (auto bad = admissibility_violation(controls, mask, regions.quarantine_bound())) throw ContractError(*bad);
}

void require_setup(const ModelParams& params, const QuarantineRegions& regions, const Grid& grid) {
    params.validate();
    grid.require_stable(params);
    regions.validate(grid.x_min, grid.x_max);
}

/// Diffusion term D_c * lap(field row m) for all six fields into `lap`.
void diffusion_rows(const FieldBundle& fields, std::size_t m, const ModelParams& params, double dx,
                    std::array<std::vector<double>, kCompartments>& lap) {
    for (std::size_t c = 0; c < kCompartments; ++c) {
        neumann_laplacian(fields[c].row(m), dx, lap[c]);
        for (double& v : lap[c]) v *= params.diffusion[c];
    }
}

std::array<std::vector<double>, kCompartments> scratch(std::size_t nx) {
    std::array<std::vector<double>, kCompartments> s;
    for (auto& v : s) v.assign(nx, 0.0);
    return s;
}

void require_finite(const StateVec& v, std::size_t m, std::size_t j, const char* what) {
    for (double x : v.y) {
        if (!std::isfinite(x)) throw IntegrationError(std::string(what) + " produced a non-finite value", m, j);
    }
}

}  // namespace

StateTrajectory forward_solve(const InitialState& initial, const ControlPair& controls, const ModelParams& params,
                              const QuarantineRegions& regions, const Grid& grid) {
    require_setup(params, regions, grid);
    const auto mask = region_mask(grid, regions);
    require_controls(controls, regions, grid, mask);

    StateTrajectory traj(grid);
    for (std::size_t c = 0; c < kCompartments; ++c) {
        if (initial[c].size() != grid.nx) {
            throw ContractError(std::string("initial profile for ") + kCompartmentNames[c] + " has " +
                                std::to_string(initial[c].size()) + " values, expected " + std::to_string(grid.nx));
        }
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const double v = initial[c][j];
            if (!(std::isfinite(v) && v >= 0.0)) {
                throw ContractError(std::string("initial profile for ") + kCompartmentNames[c] +
                                    " must be finite and nonnegative (node " + std::to_string(j) + ")");
            }
            traj[c](0, j) = v;
        }
    }

    const double dt = grid.dt();
    const double dx = grid.dx();
    auto lap = scratch(grid.nx);
    for (std::size_t m = 0; m < grid.nt; ++m) {
        diffusion_rows(traj, m, params, dx, lap);
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const StateVec y = traj.at(m, j);
            const double v_eff = mask[j] ? controls.v(m, j) : 0.0;
            const StateVec rhs = reaction_rhs(y, controls.u(m, j), v_eff, params);
            StateVec next;
            for (std::size_t c = 0; c < kCompartments; ++c) next[c] = y[c] + dt * (lap[c][j] + rhs[c]);
            require_finite(next, m + 1, j, "forward_solve");
            traj.set(m + 1, j, next);
        }
    }
    return traj;
}

AdjointTrajectory adjoint_solve(const StateTrajectory& state, const ControlPair& controls, const CostWeights& weights,
                                const ModelParams& params, const QuarantineRegions& regions, const Grid& grid) {
    require_setup(params, regions, grid);
    for (double rho : {weights.rho1, weights.rho3, weights.rho4, weights.rho5}) {
        if (!(std::isfinite(rho) && rho >= 0.0)) throw ContractError("adjoint_solve: rho weights must be nonnegative");
    }
    require_grid(grid, state.grid(), "state trajectory");
    const auto mask = region_mask(grid, regions);
    require_controls(controls, regions, grid, mask);

    AdjointTrajectory adj(grid);
    const double dt = grid.dt();
    const double dx = grid.dx();
    auto lap = scratch(grid.nx);
    for (std::size_t next = grid.nt; next-- > 0;) {
        const std::size_t cur = next + 1;  // row whose adjoint and coefficients are read
        const double source_weight = (cur == grid.nt) ? 0.5 * dt : dt;
        diffusion_rows(adj, cur, params, dx, lap);
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const StateVec p = adj.at(cur, j);
            const double v_eff = mask[j] ? controls.v(cur, j) : 0.0;
            const Matrix6 h = state_jacobian(state.at(cur, j), controls.u(cur, j), v_eff, params);
            const Vector6 rho = rho_source(mask[j] != 0, weights);
            StateVec out;
            for (std::size_t c = 0; c < kCompartments; ++c) {
                double ht_p = 0.0;
                for (std::size_t r = 0; r < kCompartments; ++r) ht_p += h[r][c] * p[r];
                out[c] = p[c] + dt * (lap[c][j] + ht_p) + source_weight * rho[c];
            }
            require_finite(out, next, j, "adjoint_solve");
            adj.set(next, j, out);
        }
    }
    return adj;
}

FieldBundle sensitivity_solve(const StateTrajectory& state, const ControlPair& controls, const ControlPair& direction,
                              const ModelParams& params, const QuarantineRegions& regions, const Grid& grid) {
    require_setup(params, regions, grid);
    require_grid(grid, state.grid(), "state trajectory");
    require_grid(grid, direction.u.grid(), "direction (treatment part)");
    require_grid(grid, direction.v.grid(), "direction (quarantine part)");
    const auto mask = region_mask(grid, regions);
    require_controls(controls, regions, grid, mask);
    for (double v : direction.u.values()) {
        if (!std::isfinite(v)) throw ContractError("sensitivity direction must be finite");
    }
    for (double v : direction.v.values()) {
        if (!std::isfinite(v)) throw ContractError("sensitivity direction must be finite");
    }

    FieldBundle y(grid);
    const double dt = grid.dt();
    const double dx = grid.dx();
    auto lap = scratch(grid.nx);
    for (std::size_t m = 0; m < grid.nt; ++m) {
        diffusion_rows(y, m, params, dx, lap);
        for (std::size_t j = 0; j < grid.nx; ++j) {
            const bool in_region = mask[j] != 0;
            const StateVec x = state.at(m, j);
            const double v_eff = in_region ? controls.v(m, j) : 0.0;
            const Matrix6 h = state_jacobian(x, controls.u(m, j), v_eff, params);
            const Matrix6x2 g = control_jacobian(x, in_region);
            const double hu = direction.u(m, j);
            const double hv = in_region ? direction.v(m, j) : 0.0;
            const StateVec cur = y.at(m, j);
            StateVec next;
            for (std::size_t r = 0; r < kCompartments; ++r) {
                double hy = 0.0;
                for (std::size_t c = 0; c < kCompartments; ++c) hy += h[r][c] * cur[c];
                next[r] = cur[r] + dt * (lap[r][j] + hy + g[r][0] * hu + g[r][1] * hv);
            }
            require_finite(next, m + 1, j, "sensitivity_solve");
            y.set(m + 1, j, next);
        }
    }
    return y;
}

}  // namespace sqeiar
