#include <benchmark/benchmark.h>

#include "chowla/clt_audit.hpp"
#include "chowla/energy.hpp"
#include "chowla/numtheory.hpp"
#include "chowla/rmf.hpp"
#include "chowla/sieve.hpp"

namespace chowla {
namespace {

void BM_Energy(benchmark::State& state) {
  const IntPolynomial p = IntPolynomial::parse("x^2+1");
  const ProgressionRange range(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(energy(p, range).total);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Energy)->RangeMultiplier(2)->Range(500, 4000)->Complexity()->Unit(benchmark::kMillisecond);

void BM_EnergyChunked(benchmark::State& state) {
  const IntPolynomial p = IntPolynomial::parse("x^2+1");
  const ProgressionRange range(state.range(0));
  EnergyOptions options;
  options.chunked = true;
  options.memory_budget = 1'000'000;
  for (auto _ : state) benchmark::DoNotOptimize(energy(p, range, options).total);
}
BENCHMARK(BM_EnergyChunked)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Factor(benchmark::State& state) {
  std::uint64_t n = (std::uint64_t{1} << state.range(0)) + 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(factor(n));
    n += 2;
  }
}
BENCHMARK(BM_Factor)->Arg(32)->Arg(48)->Arg(62);

void BM_FactorValues(benchmark::State& state) {
  const IntPolynomial p = IntPolynomial::parse("x^2+1");
  SieveOptions options;
  options.threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(factor_values(p, state.range(0), options).size());
}
BENCHMARK(BM_FactorValues)->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

void BM_SamplerAngle(benchmark::State& state) {
  const SteinhausSampler sampler(42);
  std::uint64_t p = 2;
  for (auto _ : state) benchmark::DoNotOptimize(sampler.angle(p++));
}
BENCHMARK(BM_SamplerAngle);

void BM_PartialSum(benchmark::State& state) {
  const FactorTable table = factor_values(IntPolynomial::parse("x^2+1"), state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(partial_sum(SteinhausSampler(seed++), table, table.size()));
}
BENCHMARK(BM_PartialSum)->Arg(1000)->Arg(32000);

void BM_Clt(benchmark::State& state) {
  const IntPolynomial p = IntPolynomial::parse("x^2+1");
  CltOptions options;
  options.threads = static_cast<int>(state.range(0));
  options.skip_exact_fourth_moment = true;
  for (auto _ : state) benchmark::DoNotOptimize(run_clt(p, 1000, 2000, 1, options).stats.var_re);
}
BENCHMARK(BM_Clt)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace chowla

BENCHMARK_MAIN();
