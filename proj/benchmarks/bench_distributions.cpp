#include <benchmark/benchmark.h>

#include "airyspec/distributions.hpp"

using namespace airyspec;

static void BM_SpectralFactors(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_factors(s, 2));
}
BENCHMARK(BM_SpectralFactors)->Arg(-8)->Arg(-4)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_CdfGue(benchmark::State& state) {
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cdf_gue(1, s));
}
BENCHMARK(BM_CdfGue)->Arg(-6)->Arg(-2)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_PdfBeta(benchmark::State& state) {
  const int beta = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pdf_beta(beta, 2, -2.0));
}
BENCHMARK(BM_PdfBeta)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

// The series alone, on factors computed once.
static void BM_GueSeriesFromFactors(benchmark::State& state) {
  auto f = spectral_factors(-3, 2);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cdf_gue(k, f));
    benchmark::DoNotOptimize(pdf_gue(k, f));
  }
}
BENCHMARK(BM_GueSeriesFromFactors)->Arg(1)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
