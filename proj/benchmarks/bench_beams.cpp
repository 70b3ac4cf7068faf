#include <benchmark/benchmark.h>

#include "airyspec/beams.hpp"
#include "airyspec/spectrum.hpp"

using namespace airyspec;

static void BM_Propagate(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  auto s = uniform_grid(-60, 30, M);
  auto xi = uniform_grid(0, 12, 25);
  auto ip = initial_profile(BeamKind::finite, 0.202, s);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(ip.values, s, xi));
}
BENCHMARK(BM_Propagate)->RangeMultiplier(2)->Range(1024, 16384)->Unit(benchmark::kMillisecond);

static void BM_EigenBeamInitial(benchmark::State& state) {
  auto spec = full_spectrum(-2, 0);
  auto s = uniform_grid(-60, 30, 4096);
  for (auto _ : state) benchmark::DoNotOptimize(eigen_beam_initial(spec, s));
}
BENCHMARK(BM_EigenBeamInitial)->Unit(benchmark::kMillisecond);

static void BM_EnergyFraction(benchmark::State& state) {
  auto spec = full_spectrum(-1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(energy_fraction(spec.expansions[0], -1));
}
BENCHMARK(BM_EnergyFraction)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
