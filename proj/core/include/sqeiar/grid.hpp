#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqeiar/model.hpp"

namespace sqeiar {

/// Uniform space-time grid: nx nodes on [x_min, x_max], nt steps on [0, tau].
struct Grid {
    double x_min = 0.0;
    double x_max = 1.0;
    std::size_t nx = 101;
    double tau = 30.0;
    std::size_t nt = 3000;

    double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
    double dt() const { return tau / static_cast<double>(nt); }
    double x(std::size_t j) const { return x_min + static_cast<double>(j) * dx(); }
    double t(std::size_t m) const { return static_cast<double>(m) * dt(); }
    std::size_t rows() const { return nt + 1; }

    /// Throws ContractError unless nx >= 3, nt >= 1 and the extents are positive.
    void validate() const;

    /// Largest D_i * dt / dx^2.
    double cfl_number(const ModelParams& params) const;

    /// validate() plus the explicit-diffusion bound cfl_number <= 1/2.
    void require_stable(const ModelParams& params) const;

    /// Trapezoid weights in space; they sum to x_max - x_min.
    std::vector<double> space_weights() const;

    /// Trapezoid weights in time; they sum to tau.
    std::vector<double> time_weights() const;

    bool operator==(const Grid&) const = default;
};

/// 1 where the node lies strictly inside some quarantine region.
std::vector<std::uint8_t> region_mask(const Grid& grid, const QuarantineRegions& regions);

/// Returns a warning when dt is too coarse for the reaction terms to keep the
/// explicit update positive: dt * (beta + lambda_max + 1/n + k + eta + f + 1 + xi) >= 1.
/// lambda_max is bounded with the largest initial total density.
std::optional<std::string> reaction_step_warning(const Grid& grid, const ModelParams& params,
                                                 const QuarantineRegions& regions,
                                                 double max_total_density);

/// One compartment (or control, or adjoint variable) on the (nt+1) x nx grid.
class SpaceTimeField {
public:
    SpaceTimeField() = default;
    explicit SpaceTimeField(const Grid& grid, double fill = 0.0);

    const Grid& grid() const { return grid_; }
    std::size_t rows() const { return grid_.rows(); }
    std::size_t cols() const { return grid_.nx; }

    double& operator()(std::size_t m, std::size_t j) { return values_[m * grid_.nx + j]; }
    double operator()(std::size_t m, std::size_t j) const { return values_[m * grid_.nx + j]; }

    std::span<double> row(std::size_t m) { return {values_.data() + m * grid_.nx, grid_.nx}; }
    std::span<const double> row(std::size_t m) const { return {values_.data() + m * grid_.nx, grid_.nx}; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    /// Trapezoid integral over space of row m.
    double integrate_row(std::size_t m) const;

    /// Largest absolute entry.
    double max_abs() const;

    bool operator==(const SpaceTimeField&) const = default;

private:
    Grid grid_{};
    std::vector<double> values_;
};

/// Six fields sharing one grid, indexed by Compartment.
struct FieldBundle {
    std::array<SpaceTimeField, kCompartments> fields;

    FieldBundle() = default;
    explicit FieldBundle(const Grid& grid);

    const Grid& grid() const { return fields[0].grid(); }
    SpaceTimeField& operator[](std::size_t c) { return fields[c]; }
    const SpaceTimeField& operator[](std::size_t c) const { return fields[c]; }

    StateVec at(std::size_t m, std::size_t j) const;
    void set(std::size_t m, std::size_t j, const StateVec& value);

    bool operator==(const FieldBundle&) const = default;
};

/// The six compartments S, Q, E, A, I, R over the grid.
struct StateTrajectory : FieldBundle {
    using FieldBundle::FieldBundle;
};

/// The six adjoint variables p1..p6 over the grid; the terminal row is zero.
struct AdjointTrajectory : FieldBundle {
    using FieldBundle::FieldBundle;
};

/// Initial profiles, one nx-vector per compartment.
using InitialState = std::array<std::vector<double>, kCompartments>;

/// Treatment u (whole domain) and quarantine v (region nodes only).
struct ControlPair {
    SpaceTimeField u;
    SpaceTimeField v;

    static ControlPair zero(const Grid& grid) { return {SpaceTimeField(grid), SpaceTimeField(grid)}; }

    const Grid& grid() const { return u.grid(); }
    bool operator==(const ControlPair&) const = default;
};

/// Empty when 0 <= u <= 1, 0 <= v <= 1/n and v == 0 off the mask; otherwise a
/// description of the first violation.
std::optional<std::string> admissibility_violation(const ControlPair& controls, std::span<const std::uint8_t> mask,
                                                   double quarantine_bound);

/// Max-norm distance over both control fields.
double control_distance(const ControlPair& a, const ControlPair& b);

}  // namespace sqeiar
