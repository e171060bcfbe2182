#include <benchmark/benchmark.h>

#include "tricomi/functionals.hpp"
#include "tricomi/solver.hpp"

using namespace tricomi;

static void BM_SolverStep(benchmark::State& state) {
  const double dr = 1.0 / static_cast<double>(state.range(0));
  auto c = solver::default_config({1.0, 3, 2.0, 2.0, NonlinearityMode::mixed}, 0.5, dr, 5.0);
  solver::RadialSystem sys(c.params, c.dr, c.node_count());
  auto s = solver::initial_state(c);
  const double dt = solver::step_size(1.0, c);
  for (auto _ : state) {
    sys.step(s, dt);
    if (s.t > 1.0) s = solver::initial_state(c);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(c.node_count()));
}
BENCHMARK(BM_SolverStep)->Arg(100)->Arg(1000);

static void BM_TraceSample(benchmark::State& state) {
  auto c = solver::default_config({1.0, 3, 2.0, 2.0, NonlinearityMode::mixed}, 0.5, 1e-3, 5.0);
  auto s = solver::initial_state(c);
  functionals::TraceBuilder tb(c);
  for (auto _ : state) {
    tb(s);
    s.t += 1e-3;
  }
}
BENCHMARK(BM_TraceSample);
