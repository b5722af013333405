#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "admitsim/common.hpp"

namespace admitsim::market {

/// Applicants may list at most this many programs.
inline constexpr std::size_t kMaxListLength = 8;

/// Bounds of the eligibility-score scale.
inline constexpr double kMinScore = -3.0;
inline constexpr double kMaxScore = 12.2;

struct Applicant {
  StudentId id;
  double score{0.0};
};

struct ProgramRecord {
  ProgramId id;
  int capacity{1};
  Point location;
  double peer_quality{0.0};              // mean peer high-school GPA
  double same_gender_share_female{0.5};  // in [0,1]
  double peer_parents_income{0.5};       // mean parental income rank, in [0,1]
};

struct RankOrderedList {
  StudentId student;
  std::vector<ProgramId> entries;
};

/// Minimum admitted score of a program, or Open when seats were left over.
class CutoffValue {
 public:
  static constexpr CutoffValue open() { return CutoffValue{}; }
  static constexpr CutoffValue at(double score) { return CutoffValue{score}; }

  constexpr bool is_open() const { return !value_.has_value(); }
  /// Only meaningful when !is_open().
  constexpr double value() const { return *value_; }

  /// A score clears a cutoff when it is at least the cutoff; Open admits all.
  constexpr bool admits(double score) const { return is_open() || score >= *value_; }

  friend constexpr bool operator==(const CutoffValue&, const CutoffValue&) = default;

 private:
  constexpr CutoffValue() = default;
  constexpr explicit CutoffValue(double v) : value_(v) {}
  std::optional<double> value_;
};

/// One matching market: applicants, programs and submitted lists.
/// Applicants without a list take part in nothing and end up unassigned.
struct Market {
  std::vector<Applicant> applicants;
  std::vector<ProgramRecord> programs;
  std::vector<RankOrderedList> rols;
};

struct MatchOutcome {
  std::map<StudentId, std::optional<ProgramId>> assignment;
  std::map<ProgramId, CutoffValue> cutoffs;

  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

}  // namespace admitsim::market
