#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sve/ader2.hpp"
#include "sve/driver.hpp"

using namespace sve;

namespace {

FieldState hump_field(std::size_t cells, int n_ghost) {
  std::vector<CellState> interior;
  const double dx = 20.0 / static_cast<double>(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = -10.0 + (static_cast<double>(i) + 0.5) * dx;
    const double eta = 0.2 * std::exp(-x * x);
    interior.push_back({1.0 - eta, 0.6263, eta});
  }
  return FieldState::make(std::move(interior), dx, -10.0, n_ghost);
}

SchemeParams hump_params(StarSolver solver) {
  SchemeParams p;
  p.closure = Grass{0.01, 1.5};
  p.star_solver = solver;
  p.bc = {InflowDischarge{0.6263}, FixedDepth{1.0}};
  return p;
}

void BM_StarLinearized(benchmark::State& state) {
  const CellState l{1.0, 0.3, 0.0}, r{0.8, 0.2, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(star_state_linearized(l, r));
}
BENCHMARK(BM_StarLinearized);

void BM_StarIterative(benchmark::State& state) {
  const CellState l{1.0, 0.3, 0.0}, r{0.8, 0.2, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(star_state_iterative(l, r));
}
BENCHMARK(BM_StarIterative);

void BM_StepFirstOrder(benchmark::State& state) {
  const auto f = hump_field(static_cast<std::size_t>(state.range(0)), 1);
  const auto p = hump_params(StarSolver::Linearized);
  const double dt = cfl_timestep(f, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(step_first_order(f, dt, p));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepFirstOrder)->RangeMultiplier(4)->Range(100, 6400);

void BM_StepSecondOrder(benchmark::State& state) {
  const auto f = hump_field(static_cast<std::size_t>(state.range(0)), 2);
  const auto p = hump_params(StarSolver::Linearized);
  const SecondOrderOptions opts{AenoParams{1e-4, 0.5}};
  const double dt = cfl_timestep(f, 0.9);
  for (auto _ : state) benchmark::DoNotOptimize(step_second_order(f, dt, p, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StepSecondOrder)->RangeMultiplier(4)->Range(100, 6400);

void BM_RiemannMovablePreset(benchmark::State& state) {
  const auto cfg = make_preset("riemann_movable");
  for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
}
BENCHMARK(BM_RiemannMovablePreset)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
