#include "sqeiar/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sqeiar/errors.hpp"
#include "sqeiar/pde.hpp"

namespace sqeiar {

CheckReport make_report(std::string name, double measured, double lower, double upper, std::string detail) {
    CheckReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.lower = lower;
    r.bound = upper;
    r.passed = measured >= lower && measured <= upper;
    r.detail = std::move(detail);
    return r;
}

RunMetrics extract_metrics(const StateTrajectory& traj, const Grid& grid) {
    if (!(traj.grid() == grid)) throw ContractError("extract_metrics: trajectory is defined on a different grid");
    RunMetrics out;
    const std::size_t rows = grid.rows();
    out.times.resize(rows);
    out.total.assign(rows, 0.0);
    for (std::size_t m = 0; m < rows; ++m) out.times[m] = grid.t(m);
    for (std::size_t c = 0; c < kCompartments; ++c) {
        auto& agg = out.aggregates[c];
        agg.resize(rows);
        for (std::size_t m = 0; m < rows; ++m) {
            agg[m] = traj[c].integrate_row(m);
            out.total[m] += agg[m];
        }
        const auto peak = std::max_element(agg.begin(), agg.end());
        out.peak_value[c] = *peak;
        out.peak_time[c] = out.times[static_cast<std::size_t>(peak - agg.begin())];
    }
    out.initial_total_population = out.total.front();
    out.final_total_population = out.total.back();
    out.deaths = out.initial_total_population - out.final_total_population;
    return out;
}

std::optional<double> time_to_threshold(const RunMetrics& metrics, std::size_t compartment, double level,
                                        Crossing direction) {
    const auto& agg = metrics.aggregates.at(compartment);
    for (std::size_t m = 0; m < agg.size(); ++m) {
        const bool hit = direction == Crossing::kBelow ? agg[m] < level : agg[m] > level;
        if (hit) return metrics.times[m];
    }
    return std::nullopt;
}

namespace {

double total_population(const StateTrajectory& traj, std::size_t m) {
    double n = 0.0;
    for (std::size_t c = 0; c < kCompartments; ++c) n += traj[c].integrate_row(m);
    return n;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

CheckReport mass_balance_check(const StateTrajectory& traj, const ModelParams& params, const Grid& grid,
                               double tolerance) {
    if (!(traj.grid() == grid)) throw ContractError("mass_balance_check: trajectory is defined on a different grid");
    const double n0 = total_population(traj, 0);
    const double scale = n0 > 0.0 ? n0 : 1.0;
    const double dt = grid.dt();
    const double loss_rate = (params.alpha - 1.0) * params.f;
    double worst = 0.0;
    std::size_t worst_step = 0;
    double n_prev = n0;
    for (std::size_t m = 0; m < grid.nt; ++m) {
        const double n_next = total_population(traj, m + 1);
        const double expected = dt * loss_rate * traj[kI].integrate_row(m);
        const double residual = std::abs((n_next - n_prev) - expected) / scale;
        if (residual > worst) {
            worst = residual;
            worst_step = m;
        }
        n_prev = n_next;
    }
    return make_report("mass_balance", worst, 0.0, tolerance,
                       "worst step " + std::to_string(worst_step) + ", population scale " + format_double(scale));
}

CheckReport positivity_check(const StateTrajectory& traj, double relative_slack) {
    const double n0 = total_population(traj, 0);
    double most_negative = 0.0;
    std::string where = "no negative values";
    for (std::size_t c = 0; c < kCompartments; ++c) {
        const SpaceTimeField& f = traj[c];
        for (std::size_t m = 0; m < f.rows(); ++m) {
            for (std::size_t j = 0; j < f.cols(); ++j) {
                if (f(m, j) < most_negative) {
                    most_negative = f(m, j);
                    where = std::string("compartment ") + kCompartmentNames[c] + ", step " + std::to_string(m) +
                            ", node " + std::to_string(j);
                }
            }
        }
    }
    const double lower = -relative_slack * (n0 > 0.0 ? n0 : 1.0);
    return make_report("positivity", most_negative, lower, std::numeric_limits<double>::infinity(), where);
}

ControlPair random_direction(const Grid& grid, const QuarantineRegions& regions, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto mask = region_mask(grid, regions);
    const double v_max = regions.quarantine_bound();
    ControlPair h = ControlPair::zero(grid);
    double sum_u = 0.0, sum_v = 0.0;
    std::size_t count_v = 0;
    for (std::size_t m = 0; m < grid.rows(); ++m) {
        for (std::size_t j = 0; j < grid.nx; ++j) {
            h.u(m, j) = unit(rng);
            sum_u += h.u(m, j);
            if (mask[j]) {
                h.v(m, j) = v_max * unit(rng);
                sum_v += h.v(m, j);
                ++count_v;
            }
        }
    }
    const double mean_u = sum_u / static_cast<double>(grid.rows() * grid.nx);
    const double mean_v = count_v ? sum_v / static_cast<double>(count_v) : 0.0;
    for (std::size_t m = 0; m < grid.rows(); ++m) {
        for (std::size_t j = 0; j < grid.nx; ++j) {
            h.u(m, j) -= mean_u;
            if (mask[j]) h.v(m, j) -= mean_v;
        }
    }
    return h;
}

namespace {

ControlPair shifted(const ControlPair& w, const ControlPair& h, double eps) {
    ControlPair out = w;
    auto ou = out.u.values(), ov = out.v.values();
    const auto hu = h.u.values(), hv = h.v.values();
    for (std::size_t i = 0; i < ou.size(); ++i) {
        ou[i] += eps * hu[i];
        ov[i] += eps * hv[i];
    }
    return out;
}

void require_admissible_shift(const ControlPair& w, const ControlPair& h, double eps, const Problem& pb,
                              std::span<const std::uint8_t> mask) {
    if (!(h.grid() == pb.grid)) throw ContractError("oracle direction is defined on a different grid");
    if (auto bad = admissibility_violation(shifted(w, h, eps), mask, pb.regions.quarantine_bound())) {
        std::ostringstream os;
        os << "perturbed controls w + (" << eps << ") h are not admissible: " << *bad;
        throw ContractError(os.str());
    }
}

double cost_at(const Problem& pb, const ControlPair& w) {
    const StateTrajectory y = forward_solve(pb.initial, w, pb.params, pb.regions, pb.grid);
    return cost_functional(y, w, pb.weights, pb.regions, pb.grid);
}

/// Largest log-distance from a first-order ratio of 10; the band [5, 20] is
/// symmetric around 10 in log scale.
double worst_ratio(const std::vector<double>& ratios) {
    double worst = 10.0;
    for (double r : ratios) {
        if (!(std::abs(std::log(r / 10.0)) <= std::abs(std::log(worst / 10.0)))) worst = r;
    }
    return worst;
}

}  // namespace

std::vector<CheckReport> gradient_oracle(const ControlPair& controls, const Problem& pb,
                                         const std::vector<double>& epsilons, const OracleOptions& options) {
    if (epsilons.empty()) throw ContractError("gradient_oracle needs at least one epsilon");
    std::vector<double> ladder = epsilons;
    std::sort(ladder.begin(), ladder.end(), std::greater<>());
    if (!(ladder.back() > 0.0)) throw ContractError("gradient_oracle epsilons must be positive");

    const auto mask = region_mask(pb.grid, pb.regions);
    std::vector<ControlPair> directions = options.explicit_directions;
    std::vector<std::uint64_t> seeds;
    if (directions.empty()) {
        for (std::size_t k = 0; k < options.directions; ++k) {
            seeds.push_back(options.seed + k);
            directions.push_back(random_direction(pb.grid, pb.regions, seeds.back()));
        }
    }
    for (const auto& h : directions) {
        require_admissible_shift(controls, h, ladder.front(), pb, mask);
        require_admissible_shift(controls, h, -ladder.front(), pb, mask);
    }

    const StateTrajectory state = forward_solve(pb.initial, controls, pb.params, pb.regions, pb.grid);
    const AdjointTrajectory adjoint = adjoint_solve(state, controls, pb.weights, pb.params, pb.regions, pb.grid);
    const ControlPair grad = cost_gradient(state, adjoint, controls, pb.weights, pb.regions, pb.grid);
    const double j0 = cost_functional(state, controls, pb.weights, pb.regions, pb.grid);

    const double eps_min = ladder.back();
    double worst_rel = 0.0;
    std::vector<double> ratios;
    std::ostringstream detail;
    detail.precision(6);
    detail << "seed " << options.seed << ", " << directions.size() << " directions, epsilons";
    for (double e : ladder) detail << ' ' << e;
    for (std::size_t k = 0; k < directions.size(); ++k) {
        const ControlPair& h = directions[k];
        const double adjoint_derivative = control_inner_product(grad, h, pb.regions);
        const double j_plus = cost_at(pb, shifted(controls, h, eps_min));
        const double j_minus = cost_at(pb, shifted(controls, h, -eps_min));
        const double central = (j_plus - j_minus) / (2.0 * eps_min);
        const double diff = std::abs(central - adjoint_derivative);
        const double rel = diff == 0.0 ? 0.0 : diff / std::max(std::abs(adjoint_derivative), 1e-300);
        worst_rel = std::max(worst_rel, rel);

        std::vector<double> errors;
        for (double eps : ladder) {
            const double jp = (eps == eps_min) ? j_plus : cost_at(pb, shifted(controls, h, eps));
            errors.push_back(std::abs((jp - j0) / eps - adjoint_derivative));
        }
        for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
            if (errors[i] == 0.0 && errors[i + 1] == 0.0) continue;
            ratios.push_back(errors[i] / errors[i + 1]);
        }
        detail << "; dir " << k << ": adjoint " << adjoint_derivative << ", central " << central << ", rel " << rel;
    }

    std::vector<CheckReport> out;
    out.push_back(make_report("gradient_accuracy", worst_rel, 0.0, 1e-2, detail.str()));
    if (ratios.empty()) {
        out.push_back(make_report("gradient_decay", 0.0, 0.0, 0.0, "every difference quotient is exact"));
    } else {
        std::ostringstream rd;
        rd.precision(6);
        rd << "one-sided error ratios:";
        for (double r : ratios) rd << ' ' << r;
        out.push_back(make_report("gradient_decay", worst_ratio(ratios), 5.0, 20.0, rd.str()));
    }
    return out;
}

double l2_norm(const FieldBundle& fields) {
    const Grid& g = fields.grid();
    const auto ws = g.space_weights();
    const auto wt = g.time_weights();
    double total = 0.0;
    for (std::size_t c = 0; c < kCompartments; ++c) {
        for (std::size_t m = 0; m < g.rows(); ++m) {
            double row = 0.0;
            for (std::size_t j = 0; j < g.nx; ++j) row += ws[j] * fields[c](m, j) * fields[c](m, j);
            total += wt[m] * row;
        }
    }
    return std::sqrt(total);
}

CheckReport sensitivity_oracle(const Problem& pb, const ControlPair& controls, const ControlPair& direction,
                               const std::vector<double>& epsilons) {
    if (epsilons.empty()) throw ContractError("sensitivity_oracle needs at least one epsilon");
    std::vector<double> ladder = epsilons;
    std::sort(ladder.begin(), ladder.end(), std::greater<>());
    if (!(ladder.back() > 0.0)) throw ContractError("sensitivity_oracle epsilons must be positive");
    const auto mask = region_mask(pb.grid, pb.regions);
    for (double eps : ladder) require_admissible_shift(controls, direction, eps, pb, mask);

    const StateTrajectory base = forward_solve(pb.initial, controls, pb.params, pb.regions, pb.grid);
    const FieldBundle linear = sensitivity_solve(base, controls, direction, pb.params, pb.regions, pb.grid);

    std::vector<double> errors;
    for (double eps : ladder) {
        const StateTrajectory moved =
            forward_solve(pb.initial, shifted(controls, direction, eps), pb.params, pb.regions, pb.grid);
        FieldBundle residual(pb.grid);
        for (std::size_t c = 0; c < kCompartments; ++c) {
            auto out = residual[c].values();
            const auto a = moved[c].values(), b = base[c].values(), y = linear[c].values();
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a[i] - b[i]) / eps - y[i];
        }
        errors.push_back(l2_norm(residual));
    }

    std::ostringstream detail;
    detail.precision(6);
    detail << "L2 errors:";
    for (std::size_t i = 0; i < ladder.size(); ++i) detail << " [eps " << ladder[i] << ": " << errors[i] << ']';
    if (std::all_of(errors.begin(), errors.end(), [](double e) { return e == 0.0; })) {
        return make_report("sensitivity", 0.0, 0.0, 0.0, detail.str() + " (exact)");
    }
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) ratios.push_back(errors[i] / errors[i + 1]);
    if (ratios.empty()) {
        return make_report("sensitivity", errors.front(), 0.0, 0.0, detail.str() + " (single epsilon, no ladder)");
    }
    detail << "; ratios:";
    for (double r : ratios) detail << ' ' << r;
    return make_report("sensitivity", worst_ratio(ratios), 5.0, 20.0, detail.str());
}

}  // namespace sqeiar
