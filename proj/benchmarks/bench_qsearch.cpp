#include <benchmark/benchmark.h>

#include "qsearch/counting.hpp"
#include "qsearch/efficiency.hpp"
#include "qsearch/full_simulator.hpp"
#include "qsearch/phase_estimation.hpp"
#include "qsearch/reduced_dynamics.hpp"

namespace {

using namespace qsearch;

SearchScenario sized_scenario(std::size_t n) {
  SuiteOptions opt;
  opt.min_items = opt.max_items = n;
  return random_scenario_suite(1, 1, SuiteMode::kBasic, opt).front();
}

void BM_ReducedEvolve(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_state(0.37, 1.0, t));
    t += 1e-3;
  }
}
BENCHMARK(BM_ReducedEvolve);

// Cost of the brute-force reference, including the eigendecomposition.
void BM_FullEvolve(benchmark::State& state) {
  const auto s = sized_scenario(static_cast<std::size_t>(state.range(0)));
  const auto prep = weighted_superposition(s);
  const auto h = full_hamiltonian(s, prep);
  const auto s0 = initial_full_state(prep);
  for (auto _ : state) benchmark::DoNotOptimize(full_evolve(h, s0, 1.0));
}
BENCHMARK(BM_FullEvolve)->RangeMultiplier(4)->Range(16, 1024);

void BM_MeasurementDistribution(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(measurement_distribution(0.37, m));
}
BENCHMARK(BM_MeasurementDistribution)->RangeMultiplier(4)->Range(16, 4096);

void BM_InverseQftPipeline(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(apply_inverse_qft(build_psi1(0.37, m)));
}
BENCHMARK(BM_InverseQftPipeline)->RangeMultiplier(4)->Range(16, 1024);

void BM_CountTargets(benchmark::State& state) {
  SuiteOptions opt;
  opt.max_support = 32;
  opt.uniform_weights = true;
  const auto s = random_scenario_suite(2, 1, SuiteMode::kDisjoint, opt).front();
  CountingOptions co;
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_targets(s, co));
    ++co.seed;
  }
}
BENCHMARK(BM_CountTargets);

}  // namespace
BENCHMARK_MAIN();
