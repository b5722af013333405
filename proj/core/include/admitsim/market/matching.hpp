#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "admitsim/market/types.hpp"

namespace admitsim::market {

inline constexpr std::int32_t kUnassigned = -1;

/// Validated, index-based view of a Market. Student and program positions
/// follow the order of Market::applicants and Market::programs.
class IndexedMarket {
 public:
  /// Throws InputError on duplicate ids, unknown programs in lists, lists for
  /// unknown students, duplicate entries, over-long lists or bad capacities.
  explicit IndexedMarket(const Market& market);

  /// Builds directly from dense arrays; `lists[i]` holds program positions.
  IndexedMarket(std::vector<StudentId> student_ids, std::vector<double> scores,
                std::vector<ProgramId> program_ids, std::vector<int> capacities,
                const std::vector<std::vector<std::uint32_t>>& lists);

  std::size_t num_students() const { return student_ids_.size(); }
  std::size_t num_programs() const { return program_ids_.size(); }

  StudentId student_id(std::size_t i) const { return student_ids_[i]; }
  ProgramId program_id(std::size_t j) const { return program_ids_[j]; }
  double score(std::size_t i) const { return scores_[i]; }
  int capacity(std::size_t j) const { return capacities_[j]; }
  std::span<const std::uint32_t> list(std::size_t i) const {
    return {entries_.data() + offsets_[i], entries_.data() + offsets_[i + 1]};
  }

  std::span<const StudentId> student_ids() const { return student_ids_; }
  std::span<const ProgramId> program_ids() const { return program_ids_; }
  std::span<const double> scores() const { return scores_; }
  std::span<const int> capacities() const { return capacities_; }

  /// Position of a program id, or -1.
  std::int32_t program_index(ProgramId id) const;

  /// Students in priority order: descending score, ties by ascending id.
  std::vector<std::uint32_t> priority_order() const;

  /// A market holding the listed students (repeats allowed) with all programs
  /// kept. Resampled student k is relabelled with id k.
  IndexedMarket resample(std::span<const std::uint32_t> picks) const;

 private:
  void validate() const;

  std::vector<StudentId> student_ids_;
  std::vector<double> scores_;
  std::vector<ProgramId> program_ids_;
  std::vector<int> capacities_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> entries_;
};

struct DenseOutcome {
  std::vector<std::int32_t> assigned;  // program position or kUnassigned
  std::vector<CutoffValue> cutoffs;    // per program position
};

/// Student-proposing deferred acceptance under the common score priority.
DenseOutcome deferred_acceptance(const IndexedMarket& market);

/// Cutoff table implied by a dense assignment: minimum admitted score where a
/// program is full, Open where seats remain.
std::vector<CutoffValue> cutoffs_from_assignment(const IndexedMarket& market,
                                                 std::span<const std::int32_t> assigned);

MatchOutcome to_outcome(const IndexedMarket& market, const DenseOutcome& dense);

/// Runs the admission mechanism. Returns the student-optimal stable matching
/// and the realized cutoff of every program.
MatchOutcome run_matching(const Market& market);

/// Any function from a market to an outcome; verification suites take one so
/// alternative or deliberately broken mechanisms can be checked.
using Mechanism = std::function<MatchOutcome(const Market&)>;

}  // namespace admitsim::market
