#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sqeiar/errors.hpp"
#include "sqeiar/model.hpp"

namespace sqeiar {
namespace {

StateVec make_state(double s, double q, double e, double a, double i, double r) {
    StateVec v;
    v.y = {s, q, e, a, i, r};
    return v;
}

double rhs_sum(const StateVec& y, double u, double v, const ModelParams& pm) {
    return reaction_rhs(y, u, v, pm).sum();
}

TEST(LambdaTerm, ZeroStateGivesZero) {
    EXPECT_EQ(lambda_term(make_state(5000, 3, 0, 0, 0, 7), ModelParams{}), 0.0);
}

TEST(LambdaTerm, DefaultParameters) {
    const double expected = 1e-5 * 100.0 + (1.0 - 0.9995) * 1000.0;
    EXPECT_NEAR(lambda_term(make_state(0, 0, 100, 0, 1000, 0), ModelParams{}), expected, 1e-15);
    EXPECT_NEAR(expected, 0.501, 1e-12);
}

TEST(LambdaTerm, OnlyExposedTermSurvives) {
    ModelParams pm;
    pm.delta = 1.0;
    pm.q = 1.0;
    pm.mu = 0.0;
    EXPECT_DOUBLE_EQ(lambda_term(make_state(0, 0, 7, 5, 99, 0), pm), 7.0);
}

TEST(LambdaTerm, IsLinearInState) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1e4);
    const ModelParams pm;
    for (int trial = 0; trial < 50; ++trial) {
        StateVec y;
        for (auto& v : y.y) v = dist(rng);
        const double c = dist(rng) / 1e3;
        StateVec scaled = y;
        for (auto& v : scaled.y) v *= c;
        EXPECT_NEAR(lambda_term(scaled, pm), c * lambda_term(y, pm), 1e-12 * c * lambda_term(y, pm) + 1e-300);
    }
}

TEST(ReactionRhs, ZeroStateZeroRates) {
    const StateVec out = reaction_rhs(StateVec{}, 0.0, 0.0, ModelParams{});
    for (double v : out.y) EXPECT_EQ(v, 0.0);
}

TEST(ReactionRhs, PureQuarantineTransfer) {
    ModelParams pm;
    pm.beta = 0.0;
    pm.xi = 0.0;
    const StateVec out = reaction_rhs(make_state(1, 0, 0, 0, 0, 0), 0.0, 0.5, pm);
    EXPECT_DOUBLE_EQ(out[kS], -0.5);
    EXPECT_DOUBLE_EQ(out[kQ], 0.5);
    for (std::size_t c = kE; c <= kR; ++c) EXPECT_EQ(out[c], 0.0);
}

TEST(ReactionRhs, SumIdentityAtInitialAggregates) {
    const ModelParams pm;
    const StateVec y = make_state(8000, 0, 454, 500, 500, 0);
    const StateVec out = reaction_rhs(y, 0.0, 0.0, pm);

    // Independent evaluation of every rate.
    const double lam = 1e-5 * 454 + 0.0005 * 500 + 1e-5 * 500;
    const double inf = (1e-5 + lam) * 8000;
    EXPECT_NEAR(out[kS], -inf, 1e-9);
    EXPECT_EQ(out[kQ], 0.0);
    EXPECT_NEAR(out[kE], -0.54 * 454 + inf, 1e-9);
    EXPECT_NEAR(out[kA], -0.3 * 500 + 0.9 * 0.54 * 454, 1e-9);
    EXPECT_NEAR(out[kI], 0.1 * 0.54 * 454 + 0.98 * 0.3 * 500 - 0.3 * 500, 1e-9);
    EXPECT_NEAR(out[kR], 0.995 * 0.3 * 500 + 0.02 * 0.3 * 500, 1e-9);
    EXPECT_NEAR(out.sum(), (0.995 - 1.0) * 0.3 * 500, 1e-9);
    EXPECT_NEAR(out.sum(), -0.75, 1e-9);
}

TEST(ReactionRhs, SumIdentityRandomStatesAndControls) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> state(0.0, 1e4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ModelParams pm;
    for (int trial = 0; trial < 200; ++trial) {
        StateVec y;
        for (auto& v : y.y) v = state(rng);
        const StateVec out = reaction_rhs(y, unit(rng), unit(rng), pm);
        double scale = 0.0;
        for (double v : out.y) scale = std::max(scale, std::abs(v));
        EXPECT_NEAR(out.sum(), (pm.alpha - 1.0) * pm.f * y.i(), 1e-13 * scale);
    }
}

TEST(ReactionRhs, RejectsOutOfRangeControls) {
    const ModelParams pm;
    const StateVec y = make_state(1, 0, 0, 0, 1, 0);
    try {
        reaction_rhs(y, 1.5, 0.0, pm);
        FAIL() << "expected ContractError";
    } catch (const ContractError& e) {
        EXPECT_NE(std::string(e.what()).find("treatment control u"), std::string::npos);
    }
    try {
        reaction_rhs(y, 0.0, -0.1, pm);
        FAIL() << "expected ContractError";
    } catch (const ContractError& e) {
        EXPECT_NE(std::string(e.what()).find("quarantine control v"), std::string::npos);
    }
    EXPECT_THROW(reaction_rhs(y, std::nan(""), 0.0, pm), ContractError);
    EXPECT_THROW(state_jacobian(y, 0.0, 2.0, pm), ContractError);
}

TEST(StateJacobian, ZeroStateHasOnlyConstantEntries) {
    const ModelParams pm;
    const Matrix6 h = state_jacobian(StateVec{}, 0.0, 0.0, pm);
    Matrix6 expected{};
    expected[kS][kS] = -pm.beta;
    expected[kS][kR] = pm.xi;
    expected[kE][kS] = pm.beta;
    expected[kE][kE] = -pm.k;
    expected[kA][kE] = (1 - pm.z) * pm.k;
    expected[kA][kA] = -pm.eta;
    expected[kI][kE] = pm.z * pm.k;
    expected[kI][kA] = (1 - pm.p) * pm.eta;
    expected[kI][kI] = -pm.f;
    expected[kR][kA] = pm.p * pm.eta;
    expected[kR][kI] = pm.alpha * pm.f;
    expected[kR][kR] = -pm.xi;
    for (std::size_t r = 0; r < kCompartments; ++r) {
        for (std::size_t c = 0; c < kCompartments; ++c) EXPECT_DOUBLE_EQ(h[r][c], expected[r][c]) << r << "," << c;
    }
}

TEST(StateJacobian, ColumnSumsMatchMassLoss) {
    const ModelParams pm;
    const Matrix6 h = state_jacobian(make_state(8000, 10, 454, 500, 500, 20), 0.4, 0.7, pm);
    for (std::size_t c = 0; c < kCompartments; ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < kCompartments; ++r) sum += h[r][c];
        const double expected = (c == kI) ? (pm.alpha - 1.0) * pm.f : 0.0;
        EXPECT_NEAR(sum, expected, 1e-12) << "column " << c;
    }
}

TEST(StateJacobian, MatchesCentralDifferences) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> state(0.0, 1e4);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ModelParams pm;
    const double eps = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        StateVec y;
        for (auto& v : y.y) v = state(rng);
        const double u = unit(rng), v = unit(rng);
        const Matrix6 h = state_jacobian(y, u, v, pm);
        for (std::size_t c = 0; c < kCompartments; ++c) {
            StateVec plus = y, minus = y;
            plus[c] += eps;
            minus[c] -= eps;
            const StateVec fp = reaction_rhs(plus, u, v, pm);
            const StateVec fm = reaction_rhs(minus, u, v, pm);
            for (std::size_t r = 0; r < kCompartments; ++r) {
                const double fd = (fp[r] - fm[r]) / (2 * eps);
                const double scale = std::max(1.0, std::abs(h[r][c]));
                EXPECT_LE(std::abs(fd - h[r][c]) / scale, 1e-5) << "entry " << r << "," << c;
            }
        }
    }
}

TEST(ControlJacobian, Examples) {
    Matrix6x2 g = control_jacobian(StateVec{}, true);
    for (const auto& row : g) {
        EXPECT_EQ(row[0], 0.0);
        EXPECT_EQ(row[1], 0.0);
    }
    g = control_jacobian(make_state(100, 0, 0, 0, 3, 0), true);
    const double col_u[] = {0, 0, 0, 0, -3, 3};
    const double col_v[] = {-100, 100, 0, 0, 0, 0};
    for (std::size_t r = 0; r < kCompartments; ++r) {
        EXPECT_EQ(g[r][0], col_u[r]);
        EXPECT_EQ(g[r][1], col_v[r]);
    }
    g = control_jacobian(make_state(100, 0, 0, 0, 3, 0), false);
    for (const auto& row : g) EXPECT_EQ(row[1], 0.0);
}

TEST(RhoSource, InsideAndOutsideRegions) {
    QuarantineRegions regions{{{0.2, 0.4}}};
    CostWeights all_ones{1, 1, 1, 1, 100, 100};
    EXPECT_EQ(rho_source(0.3, regions, all_ones), (Vector6{1, 0, 1, 1, 1, 0}));
    CostWeights w{2, 3, 4, 5, 100, 100};
    EXPECT_EQ(rho_source(0.7, regions, w), (Vector6{0, 0, 3, 4, 5, 0}));
    const QuarantineRegions whole;
    for (double x : {0.01, 0.5, 0.99}) EXPECT_EQ(rho_source(x, whole, w), (Vector6{2, 0, 3, 4, 5, 0}));
    EXPECT_THROW(rho_source(1.5, whole, w), ContractError);
    EXPECT_THROW(rho_source(-0.1, whole, w), ContractError);
}

TEST(Regions, MembershipIsStrict) {
    const Interval w{0.2, 0.4};
    EXPECT_FALSE(w.contains(0.2));
    EXPECT_TRUE(w.contains(0.3));
    EXPECT_FALSE(w.contains(0.4));
}

TEST(Regions, Validation) {
    EXPECT_NO_THROW(QuarantineRegions{}.validate(0, 1));
    EXPECT_THROW(QuarantineRegions{{}}.validate(0, 1), ContractError);
    EXPECT_THROW((QuarantineRegions{{{0.5, 0.2}}}.validate(0, 1)), ContractError);
    EXPECT_THROW((QuarantineRegions{{{0.1, 0.5}, {0.4, 0.8}}}.validate(0, 1)), ContractError);
    EXPECT_THROW((QuarantineRegions{{{0.5, 1.2}}}.validate(0, 1)), ContractError);
    const QuarantineRegions two{{{0.1, 0.3}, {0.5, 0.8}}};
    EXPECT_NO_THROW(two.validate(0, 1));
    EXPECT_DOUBLE_EQ(two.quarantine_bound(), 0.5);
}

TEST(Params, Validation) {
    EXPECT_NO_THROW(ModelParams::covid19().validate());
    ModelParams pm;
    pm.alpha = 1.5;
    EXPECT_THROW(pm.validate(), ContractError);
    pm = {};
    pm.q = -0.1;
    EXPECT_THROW(pm.validate(), ContractError);
    pm = {};
    pm.diffusion[3] = 0.0;
    EXPECT_THROW(pm.validate(), ContractError);
    CostWeights w;
    EXPECT_NO_THROW(w.validate());
    w.sigma2 = 0.0;
    EXPECT_THROW(w.validate(), ContractError);
}

}  // namespace
}  // namespace sqeiar
