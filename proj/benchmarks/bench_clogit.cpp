#include <benchmark/benchmark.h>

#include "admitsim/econ/clogit.hpp"
#include "admitsim/pipeline/presets.hpp"
#include "admitsim/pipeline/stages.hpp"

using namespace admitsim;

namespace {

const econ::ChoiceDataset& dataset() {
  static const econ::ChoiceDataset data = [] {
    auto c = pipeline::make_preset("recovery");
    const auto d = pipeline::generate_data(c, 1);
    const auto out = market::run_matching(d.market());
    return econ::build_choice_dataset(econ::ChoiceMode::revealed, d.students, d.programs, d.flags, d.rols,
                                      out.cutoffs);
  }();
  return data;
}

}  // namespace

static void BM_ClogitEvaluate(benchmark::State& state) {
  const econ::ClogitProblem problem(dataset());
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(problem.dimension()), 0.1);
  const bool hessian = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(problem.evaluate(x, hessian));
}
BENCHMARK(BM_ClogitEvaluate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ClogitFit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(econ::clogit_fit(dataset()));
}
BENCHMARK(BM_ClogitFit)->Unit(benchmark::kMillisecond);
