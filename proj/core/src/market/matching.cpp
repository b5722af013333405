#include "admitsim/market/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

namespace admitsim::market {

IndexedMarket::IndexedMarket(const Market& market) {
  const std::size_t n = market.applicants.size();
  student_ids_.reserve(n);
  scores_.reserve(n);
  std::unordered_map<StudentId, std::uint32_t> student_pos;
  student_pos.reserve(n);
  for (const auto& a : market.applicants) {
    if (!std::isfinite(a.score)) {
      throw InputError(fmt::format("student {} has no valid eligibility score", a.id.value));
    }
    if (!student_pos.emplace(a.id, static_cast<std::uint32_t>(student_ids_.size())).second) {
      throw InputError(fmt::format("duplicate student id {}", a.id.value));
    }
    student_ids_.push_back(a.id);
    scores_.push_back(a.score);
  }

  std::unordered_map<ProgramId, std::uint32_t> program_pos;
  for (const auto& p : market.programs) {
    if (!program_pos.emplace(p.id, static_cast<std::uint32_t>(program_ids_.size())).second) {
      throw InputError(fmt::format("duplicate program id {}", p.id.value));
    }
    program_ids_.push_back(p.id);
    capacities_.push_back(p.capacity);
  }

  std::vector<std::vector<std::uint32_t>> lists(n);
  std::vector<bool> seen(n, false);
  for (const auto& rol : market.rols) {
    const auto it = student_pos.find(rol.student);
    if (it == student_pos.end()) {
      throw InputError(fmt::format("rank-ordered list for unknown student {}", rol.student.value));
    }
    if (seen[it->second]) {
      throw InputError(fmt::format("student {} has more than one rank-ordered list", rol.student.value));
    }
    seen[it->second] = true;
    auto& list = lists[it->second];
    for (ProgramId pid : rol.entries) {
      const auto pit = program_pos.find(pid);
      if (pit == program_pos.end()) {
        throw InputError(fmt::format("student {} lists unknown program {}", rol.student.value, pid.value));
      }
      list.push_back(pit->second);
    }
  }

  offsets_.reserve(n + 1);
  offsets_.push_back(0);
  for (const auto& list : lists) {
    entries_.insert(entries_.end(), list.begin(), list.end());
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
  }
  validate();
}

IndexedMarket::IndexedMarket(std::vector<StudentId> student_ids, std::vector<double> scores,
                             std::vector<ProgramId> program_ids, std::vector<int> capacities,
                             const std::vector<std::vector<std::uint32_t>>& lists)
    : student_ids_(std::move(student_ids)),
      scores_(std::move(scores)),
      program_ids_(std::move(program_ids)),
      capacities_(std::move(capacities)) {
  if (scores_.size() != student_ids_.size() || lists.size() != student_ids_.size() ||
      capacities_.size() != program_ids_.size()) {
    throw InputError("indexed market arrays have inconsistent lengths");
  }
  offsets_.reserve(lists.size() + 1);
  offsets_.push_back(0);
  for (const auto& list : lists) {
    for (std::uint32_t j : list) {
      if (j >= program_ids_.size()) throw InputError("list references a program position out of range");
    }
    entries_.insert(entries_.end(), list.begin(), list.end());
    offsets_.push_back(static_cast<std::uint32_t>(entries_.size()));
  }
  validate();
}

void IndexedMarket::validate() const {
  for (std::size_t j = 0; j < program_ids_.size(); ++j) {
    if (capacities_[j] < 1) {
      throw InputError(fmt::format("program {} has capacity {} (must be >= 1)", program_ids_[j].value,
                                   capacities_[j]));
    }
  }
  std::vector<std::uint32_t> mark(program_ids_.size(), 0);
  for (std::size_t i = 0; i < student_ids_.size(); ++i) {
    const auto l = list(i);
    if (l.size() > kMaxListLength) {
      throw InputError(fmt::format("student {} lists {} programs (max {})", student_ids_[i].value, l.size(),
                                   kMaxListLength));
    }
    for (std::uint32_t j : l) {
      if (mark[j] == i + 1) {
        throw InputError(fmt::format("student {} lists program {} twice", student_ids_[i].value,
                                     program_ids_[j].value));
      }
      mark[j] = static_cast<std::uint32_t>(i + 1);
    }
  }
}

std::int32_t IndexedMarket::program_index(ProgramId id) const {
  const auto it = std::find(program_ids_.begin(), program_ids_.end(), id);
  return it == program_ids_.end() ? -1 : static_cast<std::int32_t>(it - program_ids_.begin());
}

std::vector<std::uint32_t> IndexedMarket::priority_order() const {
  std::vector<std::uint32_t> order(num_students());
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (scores_[a] != scores_[b]) return scores_[a] > scores_[b];
    return student_ids_[a] < student_ids_[b];
  });
  return order;
}

IndexedMarket IndexedMarket::resample(std::span<const std::uint32_t> picks) const {
  std::vector<StudentId> ids(picks.size());
  std::vector<double> scores(picks.size());
  std::vector<std::vector<std::uint32_t>> lists(picks.size());
  for (std::size_t k = 0; k < picks.size(); ++k) {
    ids[k] = StudentId{static_cast<std::int64_t>(k)};
    scores[k] = scores_[picks[k]];
    const auto l = list(picks[k]);
    lists[k].assign(l.begin(), l.end());
  }
  return IndexedMarket(std::move(ids), std::move(scores), program_ids_, capacities_, lists);
}

DenseOutcome deferred_acceptance(const IndexedMarket& market) {
  const std::size_t n = market.num_students();
  const std::size_t m = market.num_programs();

  // rank[i] = position of student i in the common priority order (0 = best).
  std::vector<std::uint32_t> rank(n);
  {
    const auto order = market.priority_order();
    for (std::size_t r = 0; r < n; ++r) rank[order[r]] = static_cast<std::uint32_t>(r);
  }
  // Heaps keyed on rank keep the lowest-priority tentative admit on top.
  const auto worse_on_top = [&](std::uint32_t a, std::uint32_t b) { return rank[a] < rank[b]; };

  std::vector<std::vector<std::uint32_t>> held(m);
  std::vector<std::uint32_t> next(n, 0);
  std::vector<std::int32_t> assigned(n, kUnassigned);

  std::deque<std::uint32_t> free;
  for (std::uint32_t i = 0; i < n; ++i) free.push_back(i);

  while (!free.empty()) {
    const std::uint32_t i = free.front();
    free.pop_front();
    const auto l = market.list(i);
    if (next[i] >= l.size()) continue;  // list exhausted
    const std::uint32_t j = l[next[i]++];
    auto& h = held[j];
    h.push_back(i);
    std::push_heap(h.begin(), h.end(), worse_on_top);
    assigned[i] = static_cast<std::int32_t>(j);
    if (h.size() > static_cast<std::size_t>(market.capacity(j))) {
      std::pop_heap(h.begin(), h.end(), worse_on_top);
      const std::uint32_t rejected = h.back();
      h.pop_back();
      assigned[rejected] = kUnassigned;
      free.push_back(rejected);
    }
  }

  DenseOutcome out;
  out.cutoffs = cutoffs_from_assignment(market, assigned);
  out.assigned = std::move(assigned);
  return out;
}

std::vector<CutoffValue> cutoffs_from_assignment(const IndexedMarket& market,
                                                 std::span<const std::int32_t> assigned) {
  const std::size_t m = market.num_programs();
  std::vector<int> count(m, 0);
  std::vector<double> lowest(m, 0.0);
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (assigned[i] == kUnassigned) continue;
    const auto j = static_cast<std::size_t>(assigned[i]);
    lowest[j] = count[j] == 0 ? market.score(i) : std::min(lowest[j], market.score(i));
    ++count[j];
  }
  std::vector<CutoffValue> cutoffs;
  cutoffs.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    cutoffs.push_back(count[j] >= market.capacity(j) ? CutoffValue::at(lowest[j]) : CutoffValue::open());
  }
  return cutoffs;
}

MatchOutcome to_outcome(const IndexedMarket& market, const DenseOutcome& dense) {
  MatchOutcome out;
  for (std::size_t i = 0; i < market.num_students(); ++i) {
    std::optional<ProgramId> p;
    if (dense.assigned[i] != kUnassigned) p = market.program_id(static_cast<std::size_t>(dense.assigned[i]));
    out.assignment.emplace_hint(out.assignment.end(), market.student_id(i), p);
  }
  for (std::size_t j = 0; j < market.num_programs(); ++j) {
    out.cutoffs.emplace(market.program_id(j), dense.cutoffs[j]);
  }
  return out;
}

MatchOutcome run_matching(const Market& market) {
  const IndexedMarket indexed(market);
  return to_outcome(indexed, deferred_acceptance(indexed));
}

}  // namespace admitsim::market
