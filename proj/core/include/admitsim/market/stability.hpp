#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "admitsim/market/types.hpp"

namespace admitsim::market {

struct BlockingPair {
  StudentId student;
  ProgramId program;

  friend auto operator<=>(const BlockingPair&, const BlockingPair&) = default;
};

/// Every (student, program) pair where the student lists the program above
/// her assignment and either the program has spare seats or the student has
/// higher priority than its lowest-priority admit. Priority is the score,
/// ties broken by ascending student id, so on tie-free markets this is
/// "score strictly exceeds the cutoff". Program load and marginal admits are
/// read from the assignment itself. An empty result certifies stability.
///
/// Throws InputError when the outcome does not belong to the market (missing
/// or unknown students, unknown programs).
std::vector<BlockingPair> check_stability(const MatchOutcome& outcome, const Market& market);

enum class FeasibilityIssue {
  over_capacity,          // program holds more students than seats
  not_in_list,            // student assigned to a program she did not list
  below_reported_cutoff,  // admitted score below the outcome's own cutoff
  cutoff_mismatch,        // cutoff Open/closed status disagrees with seat usage
};

struct FeasibilityViolation {
  FeasibilityIssue issue;
  ProgramId program;
  std::optional<StudentId> student;
};

std::string to_string(FeasibilityIssue issue);

/// Capacity, list-membership and cutoff-consistency checks on an outcome.
std::vector<FeasibilityViolation> check_feasibility(const MatchOutcome& outcome, const Market& market);

/// Gives every applicant her most-preferred listed program whose cutoff
/// admits her score. Applied to an outcome's own cutoffs this reproduces the
/// outcome's assignment on tie-free markets.
std::map<StudentId, std::optional<ProgramId>> assign_by_cutoffs(
    const Market& market, const std::map<ProgramId, CutoffValue>& cutoffs);

}  // namespace admitsim::market
