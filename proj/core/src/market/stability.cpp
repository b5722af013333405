#include "admitsim/market/stability.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "admitsim/market/matching.hpp"

namespace admitsim::market {
namespace {

// Dense assignment from an outcome, validated against the market.
std::vector<std::int32_t> dense_assignment(const MatchOutcome& outcome, const IndexedMarket& indexed) {
  if (outcome.assignment.size() != indexed.num_students()) {
    throw InputError(fmt::format("outcome covers {} students but the market has {}",
                                 outcome.assignment.size(), indexed.num_students()));
  }
  std::unordered_map<ProgramId, std::int32_t> program_pos;
  for (std::size_t j = 0; j < indexed.num_programs(); ++j) {
    program_pos.emplace(indexed.program_id(j), static_cast<std::int32_t>(j));
  }
  std::vector<std::int32_t> assigned(indexed.num_students(), kUnassigned);
  for (std::size_t i = 0; i < indexed.num_students(); ++i) {
    const auto it = outcome.assignment.find(indexed.student_id(i));
    if (it == outcome.assignment.end()) {
      throw InputError(fmt::format("outcome has no entry for student {}", indexed.student_id(i).value));
    }
    if (it->second) {
      const auto pit = program_pos.find(*it->second);
      if (pit == program_pos.end()) {
        throw InputError(fmt::format("outcome assigns student {} to unknown program {}",
                                     indexed.student_id(i).value, it->second->value));
      }
      assigned[i] = pit->second;
    }
  }
  return assigned;
}

}  // namespace

std::vector<BlockingPair> check_stability(const MatchOutcome& outcome, const Market& market) {
  const IndexedMarket indexed(market);
  const auto assigned = dense_assignment(outcome, indexed);
  const std::size_t n = indexed.num_students();
  const std::size_t m = indexed.num_programs();

  std::vector<std::uint32_t> rank(n);
  {
    const auto order = indexed.priority_order();
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
  }
  std::vector<int> load(m, 0);
  std::vector<std::uint32_t> marginal_rank(m, 0);  // worst rank admitted
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i] == kUnassigned) continue;
    const auto j = static_cast<std::size_t>(assigned[i]);
    marginal_rank[j] = load[j] == 0 ? rank[i] : std::max(marginal_rank[j], rank[i]);
    ++load[j];
  }

  std::vector<BlockingPair> blocking;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t j : indexed.list(i)) {
      if (static_cast<std::int32_t>(j) == assigned[i]) break;  // the rest is less preferred
      const bool spare = load[j] < indexed.capacity(j);
      if (spare || rank[i] < marginal_rank[j]) {
        blocking.push_back({indexed.student_id(i), indexed.program_id(j)});
      }
    }
  }
  std::sort(blocking.begin(), blocking.end());
  return blocking;
}

std::string to_string(FeasibilityIssue issue) {
  switch (issue) {
    case FeasibilityIssue::over_capacity: return "over_capacity";
    case FeasibilityIssue::not_in_list: return "not_in_list";
    case FeasibilityIssue::below_reported_cutoff: return "below_reported_cutoff";
    case FeasibilityIssue::cutoff_mismatch: return "cutoff_mismatch";
  }
  return "unknown";
}

std::vector<FeasibilityViolation> check_feasibility(const MatchOutcome& outcome, const Market& market) {
  const IndexedMarket indexed(market);
  const auto assigned = dense_assignment(outcome, indexed);
  const std::size_t m = indexed.num_programs();

  std::vector<FeasibilityViolation> violations;
  std::vector<int> load(m, 0);
  for (std::size_t i = 0; i < indexed.num_students(); ++i) {
    if (assigned[i] == kUnassigned) continue;
    const auto j = static_cast<std::uint32_t>(assigned[i]);
    ++load[j];
    const auto l = indexed.list(i);
    if (std::find(l.begin(), l.end(), j) == l.end()) {
      violations.push_back({FeasibilityIssue::not_in_list, indexed.program_id(j), indexed.student_id(i)});
    }
    const auto cit = outcome.cutoffs.find(indexed.program_id(j));
    if (cit != outcome.cutoffs.end() && !cit->second.admits(indexed.score(i))) {
      violations.push_back(
          {FeasibilityIssue::below_reported_cutoff, indexed.program_id(j), indexed.student_id(i)});
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (load[j] > indexed.capacity(j)) {
      violations.push_back({FeasibilityIssue::over_capacity, indexed.program_id(j), std::nullopt});
    }
    const auto cit = outcome.cutoffs.find(indexed.program_id(j));
    if (cit == outcome.cutoffs.end()) {
      violations.push_back({FeasibilityIssue::cutoff_mismatch, indexed.program_id(j), std::nullopt});
      continue;
    }
    const bool has_spare = load[j] < indexed.capacity(j);
    if (cit->second.is_open() != has_spare) {
      violations.push_back({FeasibilityIssue::cutoff_mismatch, indexed.program_id(j), std::nullopt});
    }
  }
  return violations;
}

std::map<StudentId, std::optional<ProgramId>> assign_by_cutoffs(
    const Market& market, const std::map<ProgramId, CutoffValue>& cutoffs) {
  const IndexedMarket indexed(market);
  std::vector<CutoffValue> dense;
  dense.reserve(indexed.num_programs());
  for (std::size_t j = 0; j < indexed.num_programs(); ++j) {
    const auto it = cutoffs.find(indexed.program_id(j));
    if (it == cutoffs.end()) {
      throw InputError(fmt::format("no cutoff for program {}", indexed.program_id(j).value));
    }
    dense.push_back(it->second);
  }
  std::map<StudentId, std::optional<ProgramId>> out;
  for (std::size_t i = 0; i < indexed.num_students(); ++i) {
    std::optional<ProgramId> pick;
    for (std::uint32_t j : indexed.list(i)) {
      if (dense[j].admits(indexed.score(i))) {
        pick = indexed.program_id(j);
        break;
      }
    }
    out.emplace(indexed.student_id(i), pick);
  }
  return out;
}

}  // namespace admitsim::market
