#include <benchmark/benchmark.h>

#include "admitsim/market/matching.hpp"
#include "admitsim/market/random_instances.hpp"
#include "admitsim/market/stability.hpp"
#include "admitsim/rng.hpp"

using namespace admitsim;

static void BM_DeferredAcceptance(benchmark::State& state) {
  Rng rng = make_rng(1);
  const auto m = market::random_market(rng, static_cast<std::size_t>(state.range(0)), 30, 0.85);
  for (auto _ : state) benchmark::DoNotOptimize(market::run_matching(m));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DeferredAcceptance)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);

static void BM_StabilityCheck(benchmark::State& state) {
  Rng rng = make_rng(2);
  const auto m = market::random_market(rng, static_cast<std::size_t>(state.range(0)), 30, 0.85);
  const auto out = market::run_matching(m);
  for (auto _ : state) benchmark::DoNotOptimize(market::check_stability(out, m));
}
BENCHMARK(BM_StabilityCheck)->Arg(10000)->Unit(benchmark::kMillisecond);
