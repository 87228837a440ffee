#include <benchmark/benchmark.h>

#include <cmath>

#include "capheight/heights.hpp"
#include "capheight/intpoly.hpp"
#include "capheight/potential.hpp"
#include "capheight/roots.hpp"
#include "capheight/setgeom.hpp"

using namespace capheight;

static void BM_EquilibriumCircle(benchmark::State& state) {
  const auto set = make_circle(0, 1);
  const auto sample = sample_boundary(set, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(equilibrium_discrete(set, sample).robin_constant);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EquilibriumCircle)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_JuliaSample(benchmark::State& state) {
  const auto set = make_julia(IntPolynomial{-1, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(sample_boundary(set, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_JuliaSample)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_FindRootsChebyshev(benchmark::State& state) {
  const IntPolynomial p = chebyshev_T(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p).residual_bound);
}
BENCHMARK(BM_FindRootsChebyshev)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_FindRootsCyclotomic(benchmark::State& state) {
  const IntPolynomial p = cyclotomic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(find_roots(p).residual_bound);
}
BENCHMARK(BM_FindRootsCyclotomic)->Arg(101)->Arg(199)->Unit(benchmark::kMillisecond);

static void BM_Resultant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IntPolynomial p = chebyshev_T(n);
  const IntPolynomial q = cyclotomic(2 * n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(p, q));
}
BENCHMARK(BM_Resultant)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMicrosecond);

static void BM_ResultantSylvester(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IntPolynomial p = chebyshev_T(n);
  const IntPolynomial q = cyclotomic(2 * n + 1);
  for (auto _ : state) benchmark::DoNotOptimize(resultant_sylvester(p, q));
}
BENCHMARK(BM_ResultantSylvester)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMicrosecond);

static void BM_Leja(benchmark::State& state) {
  const auto set = make_interval(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(leja_points(set, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_Leja)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_FeketeExchange(benchmark::State& state) {
  const auto set = make_interval(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(transfinite_diameter_estimate(set, static_cast<int>(state.range(0)), true).d_n);
}
BENCHMARK(BM_FeketeExchange)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_NorthcottScan(benchmark::State& state) {
  const GreenModel model = make_green_model(make_interval(-1, 1));
  for (auto _ : state)
    benchmark::DoNotOptimize(northcott_scan(model, 3, static_cast<int>(state.range(0)), 0.5 * std::log(2.0) - 0.05).hits.size());
}
BENCHMARK(BM_NorthcottScan)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
