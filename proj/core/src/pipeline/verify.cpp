#include "admitsim/pipeline/verify.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

#include "admitsim/common.hpp"
#include "admitsim/market/random_instances.hpp"
#include "admitsim/market/stability.hpp"
#include "admitsim/market/strategy_proofness.hpp"
#include "admitsim/rng.hpp"

namespace admitsim::pipeline {

market::Mechanism mechanism_for_fault(const std::string& fault) {
  if (fault == "none") return market::run_matching;
  if (fault == "capacity-plus-one") return market::capacity_plus_one_mechanism;
  throw ConfigError("fault", fmt::format("unknown fault '{}' (known: none, capacity-plus-one)", fault));
}

VerifyReport run_verification(const VerifyOptions& o) {
  if (o.max_students < 1 || o.max_students > market::kMaxEnumerationStudents) {
    throw ConfigError("max-students", fmt::format("must lie in 1..{}", market::kMaxEnumerationStudents));
  }
  if (o.max_programs < 1 || o.max_programs > market::kMaxEnumerationPrograms) {
    throw ConfigError("max-programs", fmt::format("must lie in 1..{}", market::kMaxEnumerationPrograms));
  }
  if (o.max_market_students < 1) throw ConfigError("max-market-students", "must be at least 1");
  const auto mechanism = mechanism_for_fault(o.fault);

  VerifyReport report;
  Rng rng = make_rng(derive_seed(o.seed, "strategy-proofness"));
  for (std::size_t k = 0; k < o.instances; ++k) {
    const auto instance = market::random_small_instance(rng, o.max_students, o.max_programs);
    const auto r = market::verify_strategy_proofness(instance, instance.market.programs.size(), mechanism);
    report.deviations_checked += r.deviations_checked;
    report.profitable_deviations += r.violations.size();
    ++report.instances;
  }

  Rng market_rng = make_rng(derive_seed(o.seed, "stability"));
  std::uniform_int_distribution<std::size_t> size(1, o.max_market_students);
  std::uniform_int_distribution<std::size_t> programs(1, 40);
  std::uniform_real_distribution<double> ratio(0.3, 1.5);
  for (std::size_t k = 0; k < o.markets; ++k) {
    const auto m = market::random_market(market_rng, size(market_rng), programs(market_rng), ratio(market_rng));
    const auto outcome = mechanism(m);
    report.blocking_pairs += market::check_stability(outcome, m).size();
    report.feasibility_violations += market::check_feasibility(outcome, m).size();
    if (market::assign_by_cutoffs(m, outcome.cutoffs) != outcome.assignment) ++report.cutoff_rule_mismatches;
    ++report.markets;
  }
  return report;
}

}  // namespace admitsim::pipeline
