#include <benchmark/benchmark.h>

#include "admitsim/cutoffs/simulation.hpp"
#include "admitsim/market/random_instances.hpp"
#include "admitsim/rng.hpp"

using namespace admitsim;

static void BM_SimulateCutoffs(benchmark::State& state) {
  Rng rng = make_rng(3);
  const auto m = market::random_market(rng, 10000, 30, 0.85);
  const auto threads = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cutoffs::simulate_cutoffs(m, 20, 7, threads));
}
BENCHMARK(BM_SimulateCutoffs)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_RationalProbabilities(benchmark::State& state) {
  Rng rng = make_rng(4);
  const auto m = market::random_market(rng, 10000, 30, 0.85);
  const auto table = cutoffs::simulate_cutoffs(m, 100, 7);
  for (auto _ : state) benchmark::DoNotOptimize(cutoffs::rational_probabilities(m, table));
}
BENCHMARK(BM_RationalProbabilities)->Unit(benchmark::kMillisecond);
