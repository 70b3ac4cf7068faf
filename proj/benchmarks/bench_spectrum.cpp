#include <benchmark/benchmark.h>

#include "airyspec/eigfun.hpp"
#include "airyspec/spectrum.hpp"

using namespace airyspec;

// Eigenvectors only: banded eigensolver plus inverse iteration.
static void BM_ComputeEigenfunctions(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compute_eigenfunctions(c, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ComputeEigenfunctions)
    ->ArgsProduct({{20, 0, -20}, {50, 100, 200, 400}})
    ->Unit(benchmark::kMillisecond);

static void BM_FullSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(full_spectrum(0, n));
  state.SetComplexityN(n);
}
BENCHMARK(BM_FullSpectrum)->RangeMultiplier(2)->Range(25, 400)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oNSquared);

static void BM_EvalPsi(benchmark::State& state) {
  auto s = compute_eigenfunctions(0, 100);
  const auto& e = s.expansions[100];
  double x = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_psi(e, x));
    x = x < 20 ? x + 0.01 : 0;
  }
}
BENCHMARK(BM_EvalPsi);

BENCHMARK_MAIN();
