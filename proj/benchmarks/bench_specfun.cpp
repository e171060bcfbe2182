#include <benchmark/benchmark.h>

#include "tricomi/specfun.hpp"
#include "tricomi/testfun.hpp"

using namespace tricomi;

static void BM_BesselK(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(specfun::bessel_k(0.25, z));
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(10)->Arg(100)->Arg(1000);

static void BM_Rho(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::rho(1.0, t));
    t = t < 10.0 ? t + 0.01 : 0.0;
  }
}
BENCHMARK(BM_Rho);

static void BM_Phi(benchmark::State& state) {
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(testfun::phi(3, r));
    r = r < 10.0 ? r + 0.01 : 0.0;
  }
}
BENCHMARK(BM_Phi);
