#pragma once

#include <span>
#include <vector>

#include "sqeiar/grid.hpp"
#include "sqeiar/model.hpp"

namespace sqeiar {

/// Second-order Laplacian with zero-flux (ghost-node reflection) boundaries.
/// `out` must have the same length as `row`, which must be at least 3.
void neumann_laplacian(std::span<const double> row, double dx, std::span<double> out);
std::vector<double> neumann_laplacian(std::span<const double> row, double dx);

/// Explicit Euler integration of the controlled SQEIAR system:
///
///   y(m+1) = y(m) + dt * (D * lap(y(m)) + F(y(m), u(m), chi * v(m)))
///
/// Row nt of the controls is never read by the dynamics.
///
/// Throws ContractError for negative or mis-sized initial data, inadmissible
/// controls or a CFL violation, and IntegrationError on the first non-finite
/// value.
StateTrajectory forward_solve(const InitialState& initial, const ControlPair& controls, const ModelParams& params,
                              const QuarantineRegions& regions, const Grid& grid);

/// Backward adjoint sweep from P(nt) = 0:
///
///   P(m) = P(m+1) + dt * (D * lap(P(m+1)) + H(m+1)^T P(m+1)) + c(m+1) * rho
///
/// where H is evaluated at the stored state and controls of row m+1 and c is
/// the trapezoid time weight (dt, or dt/2 at the final row). With this
/// pairing P is the exact discrete adjoint of forward_solve for the cost in
/// control.hpp.
AdjointTrajectory adjoint_solve(const StateTrajectory& state, const ControlPair& controls, const CostWeights& weights,
                                const ModelParams& params, const QuarantineRegions& regions, const Grid& grid);

/// Linearised state response to a control direction h, from Y(0) = 0:
///
///   Y(m+1) = Y(m) + dt * (D * lap(Y(m)) + H(m) Y(m) + G(m) h(m))
///
/// The quarantine part of h is masked to the regions.
FieldBundle sensitivity_solve(const StateTrajectory& state, const ControlPair& controls, const ControlPair& direction,
                              const ModelParams& params, const QuarantineRegions& regions, const Grid& grid);

}  // namespace sqeiar
