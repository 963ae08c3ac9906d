#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace sqeiar {

inline constexpr std::size_t kCompartments = 6;

/// Compartment indices, in the order (S, Q, E, A, I, R).
enum Compartment : std::size_t { kS = 0, kQ = 1, kE = 2, kA = 3, kI = 4, kR = 5 };

inline constexpr std::array<const char*, kCompartments> kCompartmentNames{"S", "Q", "E", "A", "I", "R"};

/// Epidemiological and diffusion constants of the SQEIAR system.
struct ModelParams {
    double beta = 1e-5;    ///< baseline exposure rate (1/day)
    double delta = 1e-5;   ///< exposed transmissibility factor
    double q = 0.9995;     ///< infected contact term uses (1 - q)
    double mu = 1e-5;      ///< asymptomatic transmissibility factor
    double xi = 0.001;     ///< reinfection rate (1/day)
    double k = 0.54;       ///< exposed progression rate (1/day)
    double z = 0.1;        ///< symptomatic fraction of progressing exposed
    double eta = 0.3;      ///< asymptomatic resolution rate (1/day)
    double p = 0.02;       ///< asymptomatic-to-recovered fraction
    double f = 0.3;        ///< infected removal rate (1/day)
    double alpha = 0.995;  ///< survival fraction of removed infected
    std::array<double, kCompartments> diffusion{0.001, 0.001, 0.001, 0.001, 0.001, 0.001};

    /// COVID-19 case-study values (the member defaults).
    static ModelParams covid19() { return {}; }

    double max_diffusion() const;

    /// Throws ContractError naming the first offending field.
    void validate() const;
};

/// Open subinterval (a, b) of the spatial domain.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    bool contains(double x) const { return a < x && x < b; }
};

/// Disjoint quarantine subregions. The per-point quarantine bound is 1/n.
struct QuarantineRegions {
    std::vector<Interval> regions{Interval{0.0, 1.0}};

    std::size_t count() const { return regions.size(); }
    double quarantine_bound() const { return 1.0 / static_cast<double>(regions.size()); }
    bool contains(double x) const;

    /// Rejects an empty list, inverted or overlapping intervals, and intervals
    /// leaving [x_min, x_max].
    void validate(double x_min, double x_max) const;
};

/// Weights of the epidemic cost (rho) and the control cost gains (sigma).
struct CostWeights {
    double rho1 = 1.0;
    double rho3 = 1.0;
    double rho4 = 1.0;
    double rho5 = 1.0;
    double sigma1 = 100.0;
    double sigma2 = 100.0;

    void validate() const;
};

/// Person densities at one grid point, ordered (S, Q, E, A, I, R).
struct StateVec {
    std::array<double, kCompartments> y{};

    double& operator[](std::size_t c) { return y[c]; }
    double operator[](std::size_t c) const { return y[c]; }

    double s() const { return y[kS]; }
    double qr() const { return y[kQ]; }
    double e() const { return y[kE]; }
    double a() const { return y[kA]; }
    double i() const { return y[kI]; }
    double r() const { return y[kR]; }

    double sum() const;
    bool operator==(const StateVec&) const = default;
};

using Matrix6 = std::array<std::array<double, kCompartments>, kCompartments>;
using Matrix6x2 = std::array<std::array<double, 2>, kCompartments>;
using Vector6 = std::array<double, kCompartments>;

/// Force of infection: delta*E + (1 - q)*I + mu*A.
double lambda_term(const StateVec& state, const ModelParams& params);

/// Non-diffusive right-hand side of the six equations. `v_effective` is the
/// quarantine rate already multiplied by the region indicator. Throws
/// ContractError when u is outside [0, 1] or v_effective outside [0, 1].
StateVec reaction_rhs(const StateVec& state, double u, double v_effective, const ModelParams& params);

/// dF/dy, rows and columns ordered (S, Q, E, A, I, R).
Matrix6 state_jacobian(const StateVec& state, double u, double v_effective, const ModelParams& params);

/// dF/d(u, v). Column 1 is the treatment column, column 2 the quarantine
/// column, which vanishes off the regions.
Matrix6x2 control_jacobian(const StateVec& state, bool in_region);

/// Source of the adjoint system: (chi*rho1, 0, rho3, rho4, rho5, 0).
/// Throws ContractError if x lies outside [x_min, x_max].
Vector6 rho_source(double x, const QuarantineRegions& regions, const CostWeights& weights,
                   double x_min = 0.0, double x_max = 1.0);

/// Same as rho_source with the region membership already resolved.
Vector6 rho_source(bool in_region, const CostWeights& weights);

}  // namespace sqeiar
