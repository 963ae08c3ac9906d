#include <benchmark/benchmark.h>

#include "sqeiar/config.hpp"
#include "sqeiar/control.hpp"
#include "sqeiar/oracles.hpp"
#include "sqeiar/pde.hpp"

namespace {

using namespace sqeiar;

Problem problem_for(std::size_t nx, std::size_t nt) {
    ScenarioConfig cfg;
    cfg.grid.nx = nx;
    cfg.grid.nt = nt;
    return make_problem(cfg);
}

void BM_ForwardSolve(benchmark::State& state) {
    const auto pb = problem_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const auto zero = ControlPair::zero(pb.grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward_solve(pb.initial, zero, pb.params, pb.regions, pb.grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_ForwardSolve)->Args({21, 300})->Args({101, 3000})->Unit(benchmark::kMillisecond);

void BM_AdjointSolve(benchmark::State& state) {
    const auto pb = problem_for(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    const auto zero = ControlPair::zero(pb.grid);
    const auto traj = forward_solve(pb.initial, zero, pb.params, pb.regions, pb.grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(adjoint_solve(traj, zero, pb.weights, pb.params, pb.regions, pb.grid));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_AdjointSolve)->Args({21, 300})->Args({101, 3000})->Unit(benchmark::kMillisecond);

void BM_SensitivitySolve(benchmark::State& state) {
    const auto pb = problem_for(21, 300);
    const auto zero = ControlPair::zero(pb.grid);
    const auto traj = forward_solve(pb.initial, zero, pb.params, pb.regions, pb.grid);
    const auto h = random_direction(pb.grid, pb.regions, 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensitivity_solve(traj, zero, h, pb.params, pb.regions, pb.grid));
    }
}
BENCHMARK(BM_SensitivitySolve)->Unit(benchmark::kMillisecond);

void BM_FbsmDefault(benchmark::State& state) {
    const auto pb = problem_for(101, 3000);
    for (auto _ : state) {
        const auto result = fbsm_solve(pb, ControlPair::zero(pb.grid));
        state.counters["iterations"] = static_cast<double>(result.report.iterations);
        benchmark::DoNotOptimize(result.controls);
    }
}
BENCHMARK(BM_FbsmDefault)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
