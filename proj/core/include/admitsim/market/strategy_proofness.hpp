#pragma once

#include <optional>
#include <vector>

#include "admitsim/market/matching.hpp"
#include "admitsim/market/types.hpp"

namespace admitsim::market {

/// Enumeration limits for exhaustive deviation checks.
inline constexpr std::size_t kMaxEnumerationStudents = 5;
inline constexpr std::size_t kMaxEnumerationPrograms = 4;

/// A market plus each applicant's complete true preference order over all
/// programs (most preferred first), aligned with market.applicants.
struct PreferenceInstance {
  Market market;
  std::vector<std::vector<ProgramId>> true_preferences;
};

enum class DeviationSet {
  all_lists,    // every ordering of every non-empty subset up to the length cap
  truncations,  // prefixes of the truthful list only
};

struct ProfitableDeviation {
  StudentId student;
  std::vector<ProgramId> truthful_list;
  std::vector<ProgramId> deviation;
  std::optional<ProgramId> truthful_assignment;
  std::optional<ProgramId> deviation_assignment;
};

struct DominanceReport {
  std::vector<ProfitableDeviation> violations;
  std::size_t deviations_checked{0};

  bool truth_dominant() const { return violations.empty(); }
};

/// For each applicant, fixes everyone else's submitted list, lets her report
/// her true order (cut at max_list_len) and then every alternative list in
/// `set`, and records any alternative that earns a strictly better program
/// under her true order. Throws InputError beyond the enumeration limits or
/// when preferences are not complete strict orders.
DominanceReport verify_strategy_proofness(const PreferenceInstance& instance, std::size_t max_list_len,
                                          const Mechanism& mechanism = run_matching,
                                          DeviationSet set = DeviationSet::all_lists);

/// All ordered, non-empty selections of at most max_len items from `items`.
std::vector<std::vector<ProgramId>> enumerate_lists(const std::vector<ProgramId>& items, std::size_t max_len);

}  // namespace admitsim::market
