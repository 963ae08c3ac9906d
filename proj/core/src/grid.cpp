#include "sqeiar/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqeiar/errors.hpp"

namespace sqeiar {

void Grid::validate() const {
    if (nx < 3) throw ContractError("grid.nx must be at least 3 (got " + std::to_string(nx) + ")");
    if (nt < 1) throw ContractError("grid.nt must be at least 1");
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_max > x_min)) {
        throw ContractError("grid requires x_min < x_max");
    }
    if (!(std::isfinite(tau) && tau > 0.0)) throw ContractError("grid.tau must be positive");
}

double Grid::cfl_number(const ModelParams& params) const {
    const double h = dx();
    return params.max_diffusion() * dt() / (h * h);
}

void Grid::require_stable(const ModelParams& params) const {
    validate();
    const double cfl = cfl_number(params);
    if (!(cfl <= 0.5)) {
        std::ostringstream os;
        os << "CFL condition violated: max D*dt/dx^2 = " << cfl << " > 1/2";
        throw ContractError(os.str());
    }
}

std::vector<double> Grid::space_weights() const {
    std::vector<double> w(nx, dx());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<double> Grid::time_weights() const {
    std::vector<double> w(nt + 1, dt());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<std::uint8_t> region_mask(const Grid& grid, const QuarantineRegions& regions) {
    std::vector<std::uint8_t> mask(grid.nx, 0);
    for (std::size_t j = 0; j < grid.nx; ++j) mask[j] = regions.contains(grid.x(j)) ? 1 : 0;
    return mask;
}

std::optional<std::string> reaction_step_warning(const Grid& grid, const ModelParams& pm,
                                                 const QuarantineRegions& regions, double max_total_density) {
    const double lambda_max = std::max({pm.delta, 1.0 - pm.q, pm.mu}) * max_total_density;
    const double rate =
        pm.beta + lambda_max + regions.quarantine_bound() + pm.k + pm.eta + pm.f + 1.0 + pm.xi;
    const double product = grid.dt() * rate;
    if (product < 1.0) return std::nullopt;
    std::ostringstream os;
    os << "dt * (reaction rate bound) = " << product
       << " >= 1; the explicit update may not preserve positivity";
    return os.str();
}

SpaceTimeField::SpaceTimeField(const Grid& grid, double fill)
    : grid_(grid), values_(grid.rows() * grid.nx, fill) {}

double SpaceTimeField::integrate_row(std::size_t m) const {
    const auto r = row(m);
    double interior = 0.0;
    for (std::size_t j = 1; j + 1 < r.size(); ++j) interior += r[j];
    return grid_.dx() * (interior + 0.5 * (r.front() + r.back()));
}

double SpaceTimeField::max_abs() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
}

FieldBundle::FieldBundle(const Grid& grid) {
    for (auto& f : fields) f = SpaceTimeField(grid);
}

StateVec FieldBundle::at(std::size_t m, std::size_t j) const {
    StateVec s;
    for (std::size_t c = 0; c < kCompartments; ++c) s[c] = fields[c](m, j);
    return s;
}

void FieldBundle::set(std::size_t m, std::size_t j, const StateVec& value) {
    for (std::size_t c = 0; c < kCompartments; ++c) fields[c](m, j) = value[c];
}

std::optional<std::string> admissibility_violation(const ControlPair& controls, std::span<const std::uint8_t> mask,
                                                   double quarantine_bound) {
    const Grid& g = controls.u.grid();
    if (!(controls.v.grid() == g)) return "u and v live on different grids";
    if (mask.size() != g.nx) return "region mask length differs from grid.nx";
    for (std::size_t m = 0; m < g.rows(); ++m) {
        for (std::size_t j = 0; j < g.nx; ++j) {
            const double u = controls.u(m, j);
            const double v = controls.v(m, j);
            if (!(u >= 0.0 && u <= 1.0)) {
                std::ostringstream os;
                os << "treatment control u = " << u << " outside [0, 1] at step " << m << ", node " << j;
                return os.str();
            }
            if (!(v >= 0.0 && v <= quarantine_bound)) {
                std::ostringstream os;
                os << "quarantine control v = " << v << " outside [0, " << quarantine_bound << "] at step " << m
                   << ", node " << j;
                return os.str();
            }
            if (!mask[j] && v != 0.0) {
                std::ostringstream os;
                os << "quarantine control v = " << v << " is nonzero off the regions at step " << m << ", node "
                   << j;
                return os.str();
            }
        }
    }
    return std::nullopt;
}

double control_distance(const ControlPair& a, const ControlPair& b) {
    if (!(a.grid() == b.grid())) throw ContractError("control_distance: grid mismatch");
    double best = 0.0;
    const auto au = a.u.values(), bu = b.u.values(), av = a.v.values(), bv = b.v.values();
    for (std::size_t i = 0; i < au.size(); ++i) {
        best = std::max({best, std::abs(au[i] - bu[i]), std::abs(av[i] - bv[i])});
    }
    return best;
}

}  // namespace sqeiar
