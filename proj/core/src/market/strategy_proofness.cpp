#include "admitsim/market/strategy_proofness.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

namespace admitsim::market {
namespace {

void extend(const std::vector<ProgramId>& items, std::size_t max_len, std::vector<bool>& used,
            std::vector<ProgramId>& current, std::vector<std::vector<ProgramId>>& out) {
  if (!current.empty()) out.push_back(current);
  if (current.size() == max_len) return;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    current.push_back(items[k]);
    extend(items, max_len, used, current, out);
    current.pop_back();
    used[k] = false;
  }
}

// Position in the true order; unassigned ranks below every program.
std::size_t true_rank(const std::vector<ProgramId>& order, const std::optional<ProgramId>& p) {
  if (!p) return order.size();
  return static_cast<std::size_t>(std::find(order.begin(), order.end(), *p) - order.begin());
}

}  // namespace

std::vector<std::vector<ProgramId>> enumerate_lists(const std::vector<ProgramId>& items, std::size_t max_len) {
  std::vector<std::vector<ProgramId>> out;
  std::vector<bool> used(items.size(), false);
  std::vector<ProgramId> current;
  extend(items, std::min(max_len, items.size()), used, current, out);
  return out;
}

DominanceReport verify_strategy_proofness(const PreferenceInstance& instance, std::size_t max_list_len,
                                          const Mechanism& mechanism, DeviationSet set) {
  const Market& base = instance.market;
  const std::size_t n = base.applicants.size();
  const std::size_t m = base.programs.size();
  if (n > kMaxEnumerationStudents || m > kMaxEnumerationPrograms) {
    throw InputError(fmt::format("instance with {} students and {} programs exceeds the enumeration bound "
                                 "({} students, {} programs)",
                                 n, m, kMaxEnumerationStudents, kMaxEnumerationPrograms));
  }
  if (max_list_len == 0 || max_list_len > kMaxListLength) {
    throw InputError(fmt::format("list length cap {} outside 1..{}", max_list_len, kMaxListLength));
  }
  if (instance.true_preferences.size() != n) {
    throw InputError("true preferences must be given for every applicant");
  }
  std::set<ProgramId> all_programs;
  for (const auto& p : base.programs) all_programs.insert(p.id);
  for (const auto& pref : instance.true_preferences) {
    const std::set<ProgramId> listed(pref.begin(), pref.end());
    if (listed != all_programs || pref.size() != m) {
      throw InputError("true preferences must rank every program exactly once");
    }
  }
  (void)IndexedMarket{base};  // validates the submitted lists

  const std::vector<ProgramId> program_ids(all_programs.begin(), all_programs.end());
  DominanceReport report;

  for (std::size_t i = 0; i < n; ++i) {
    const StudentId sid = base.applicants[i].id;
    const auto& truth = instance.true_preferences[i];
    const std::vector<ProgramId> truthful(truth.begin(),
                                          truth.begin() + static_cast<std::ptrdiff_t>(std::min(max_list_len, m)));

    Market trial = base;
    auto rol_it = std::find_if(trial.rols.begin(), trial.rols.end(),
                               [&](const RankOrderedList& r) { return r.student == sid; });
    if (rol_it == trial.rols.end()) {
      trial.rols.push_back({sid, {}});
      rol_it = trial.rols.end() - 1;
    }

    rol_it->entries = truthful;
    const auto truthful_assignment = mechanism(trial).assignment.at(sid);
    const std::size_t truthful_rank = true_rank(truth, truthful_assignment);

    std::vector<std::vector<ProgramId>> deviations;
    if (set == DeviationSet::all_lists) {
      deviations = enumerate_lists(program_ids, max_list_len);
    } else {
      for (std::size_t len = 1; len < truthful.size(); ++len) {
        deviations.emplace_back(truthful.begin(), truthful.begin() + static_cast<std::ptrdiff_t>(len));
      }
    }

    for (const auto& dev : deviations) {
      rol_it->entries = dev;
      const auto got = mechanism(trial).assignment.at(sid);
      ++report.deviations_checked;
      if (true_rank(truth, got) < truthful_rank) {
        report.violations.push_back({sid, truthful, dev, truthful_assignment, got});
      }
    }
  }
  return report;
}

}  // namespace admitsim::market
