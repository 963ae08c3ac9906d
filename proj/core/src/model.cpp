#include "sqeiar/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sqeiar/errors.hpp"

namespace sqeiar {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ContractError(message);
}

void require_nonnegative(double value, const char* name) {
    require(std::isfinite(value) && value >= 0.0,
            std::string("model parameter '") + name + "' must be finite and nonnegative");
}

void require_fraction(double value, const char* name) {
    require(std::isfinite(value) && value >= 0.0 && value <= 1.0,
            std::string("model parameter '") + name + "' must lie in [0, 1]");
}

}  // namespace

double ModelParams::max_diffusion() const {
    return *std::max_element(diffusion.begin(), diffusion.end());
}

void ModelParams::validate() const {
    require_nonnegative(beta, "beta");
    require_nonnegative(delta, "delta");
    require_nonnegative(mu, "mu");
    require_nonnegative(xi, "xi");
    require_nonnegative(k, "k");
    require_nonnegative(eta, "eta");
    require_nonnegative(f, "f");
    require_fraction(q, "q");
    require_fraction(z, "z");
    require_fraction(p, "p");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "model parameter 'alpha' must lie in (0, 1)");
    for (std::size_t c = 0; c < kCompartments; ++c) {
        require(std::isfinite(diffusion[c]) && diffusion[c] > 0.0,
                "diffusion coefficient D" + std::to_string(c + 1) + " must be strictly positive");
    }
}

bool QuarantineRegions::contains(double x) const {
    return std::any_of(regions.begin(), regions.end(), [x](const Interval& w) { return w.contains(x); });
}

void QuarantineRegions::validate(double x_min, double x_max) const {
    require(!regions.empty(), "quarantine requires at least one region");
    std::vector<Interval> sorted = regions;
    std::sort(sorted.begin(), sorted.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const Interval& w = sorted[i];
        std::ostringstream label;
        label << "region (" << w.a << ", " << w.b << ")";
        require(std::isfinite(w.a) && std::isfinite(w.b) && w.a < w.b, label.str() + " must satisfy a < b");
        require(w.a >= x_min && w.b <= x_max, label.str() + " must lie inside the spatial domain");
        if (i > 0) require(sorted[i - 1].b <= w.a, label.str() + " overlaps another region");
    }
}

void CostWeights::validate() const {
    const std::pair<double, const char*> all[] = {{rho1, "rho1"},     {rho3, "rho3"},    {rho4, "rho4"},
                                                  {rho5, "rho5"},     {sigma1, "sigma1"}, {sigma2, "sigma2"}};
    for (const auto& [value, name] : all) {
        require(std::isfinite(value) && value > 0.0, std::string("weight '") + name + "' must be strictly positive");
    }
}

double StateVec::sum() const {
    double total = 0.0;
    for (double v : y) total += v;
    return total;
}

double lambda_term(const StateVec& state, const ModelParams& params) {
    return params.delta * state.e() + (1.0 - params.q) * state.i() + params.mu * state.a();
}

namespace {

void check_controls(double u, double v_effective) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw ContractError("treatment control u = " + std::to_string(u) + " is outside [0, 1]");
    }
    if (!(v_effective >= 0.0 && v_effective <= 1.0)) {
        throw ContractError("quarantine control v = " + std::to_string(v_effective) + " is outside [0, 1/n]");
    }
}

}  // namespace

StateVec reaction_rhs(const StateVec& state, double u, double v_effective, const ModelParams& pm) {
    check_controls(u, v_effective);
    const double S = state.s(), E = state.e(), A = state.a(), I = state.i(), R = state.r();
    const double infection = (pm.beta + lambda_term(state, pm)) * S;
    const double quarantine = v_effective * S;
    StateVec out;
    out[kS] = -infection + pm.xi * R - quarantine;
    out[kQ] = quarantine;
    out[kE] = -pm.k * E + infection;
    out[kA] = -pm.eta * A + (1.0 - pm.z) * pm.k * E;
    out[kI] = pm.z * pm.k * E + (1.0 - pm.p) * pm.eta * A - (pm.f + u) * I;
    out[kR] = -pm.xi * R + pm.alpha * pm.f * I + u * I + pm.p * pm.eta * A;
    return out;
}

Matrix6 state_jacobian(const StateVec& state, double u, double v_effective, const ModelParams& pm) {
    check_controls(u, v_effective);
    const double S = state.s();
    const double m_star = pm.beta + lambda_term(state, pm);
    Matrix6 h{};
    h[kS][kS] = -m_star - v_effective;
    h[kS][kE] = -pm.delta * S;
    h[kS][kA] = -pm.mu * S;
    h[kS][kI] = -(1.0 - pm.q) * S;
    h[kS][kR] = pm.xi;
    h[kQ][kS] = v_effective;
    h[kE][kS] = m_star;
    h[kE][kE] = -pm.k + pm.delta * S;
    h[kE][kA] = pm.mu * S;
    h[kE][kI] = (1.0 - pm.q) * S;
    h[kA][kE] = (1.0 - pm.z) * pm.k;
    h[kA][kA] = -pm.eta;
    h[kI][kE] = pm.z * pm.k;
    h[kI][kA] = (1.0 - pm.p) * pm.eta;
    h[kI][kI] = -pm.f - u;
    h[kR][kA] = pm.p * pm.eta;
    h[kR][kI] = pm.alpha * pm.f + u;
    h[kR][kR] = -pm.xi;
    return h;
}

Matrix6x2 control_jacobian(const StateVec& state, bool in_region) {
    Matrix6x2 g{};
    g[kI][0] = -state.i();
    g[kR][0] = state.i();
    if (in_region) {
        g[kS][1] = -state.s();
        g[kQ][1] = state.s();
    }
    return g;
}

Vector6 rho_source(bool in_region, const CostWeights& w) {
    return {in_region ? w.rho1 : 0.0, 0.0, w.rho3, w.rho4, w.rho5, 0.0};
}

Vector6 rho_source(double x, const QuarantineRegions& regions, const CostWeights& weights, double x_min,
                   double x_max) {
    if (!(x >= x_min && x <= x_max)) {
        throw ContractError("rho_source: x = " + std::to_string(x) + " lies outside the spatial domain");
    }
    return rho_source(regions.contains(x), weights);
}

}  // namespace sqeiar
