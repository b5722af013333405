#pragma once

#include <cstdint>
#include <string>

#include "admitsim/market/matching.hpp"

namespace admitsim::pipeline {

struct VerifyOptions {
  std::size_t instances{200};
  std::size_t max_students{5};
  std::size_t max_programs{4};
  /// Random markets for the stability and self-consistency suite.
  std::size_t markets{50};
  std::size_t max_market_students{2000};
  std::uint64_t seed{1};
  /// "none" or "capacity-plus-one".
  std::string fault{"none"};
};

struct VerifyReport {
  std::size_t instances{0};
  std::size_t deviations_checked{0};
  std::size_t profitable_deviations{0};
  std::size_t markets{0};
  std::size_t blocking_pairs{0};
  std::size_t feasibility_violations{0};
  std::size_t cutoff_rule_mismatches{0};

  bool clean() const {
    return profitable_deviations == 0 && blocking_pairs == 0 && feasibility_violations == 0 &&
           cutoff_rule_mismatches == 0;
  }
};

/// Runs the strategy-proofness suite on random enumerable instances and the
/// stability, feasibility and cutoff self-consistency suite on random
/// markets, all against the selected mechanism. Throws ConfigError when the
/// bounds exceed the enumeration limits or the fault name is unknown.
VerifyReport run_verification(const VerifyOptions& options);

/// The mechanism a fault name selects.
market::Mechanism mechanism_for_fault(const std::string& fault);

}  // namespace admitsim::pipeline
