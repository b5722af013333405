#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/config.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/utilities.hpp"

namespace admitsim::synth {

struct TruthFlags {
  StudentId student;
  bool non_truthful{false};
  bool omits_top{false};
  ProgramId true_top;

  friend bool operator==(const TruthFlags&, const TruthFlags&) = default;
};

struct Reports {
  std::vector<market::RankOrderedList> rols;
  std::vector<TruthFlags> flags;
  /// Number of programs each student meant to list before omissions.
  std::vector<std::size_t> intended_length;
};

/// Multiplier applied to the omission threshold (or cost) of one student,
/// exp(loadings . traits), with 0-10 scales centred at 5 and divided by 2.5.
double trait_multiplier(const TraitLoadings& loadings, const StudentRecord& s);

/// Builds each student's submitted list. The student intends to list the top
/// L_i programs of her true order, with L_i drawn from the configured length
/// distribution, and walks down her true order skipping programs the omission
/// rule rejects until L_i programs are listed. When nothing survives she
/// lists only the program she believes most likely to admit her.
Reports generate_reports(std::span<const StudentRecord> students, std::span<const market::ProgramRecord> programs,
                         const UtilityMatrix& utilities, const Eigen::MatrixXd& beliefs,
                         const BehaviorConfig& behavior, std::uint64_t seed);

/// Flags of one submitted list against the true order and intended length.
TruthFlags truth_flags(StudentId student, std::span<const ProgramId> submitted,
                       std::span<const ProgramId> true_order, std::size_t intended_length);

}  // namespace admitsim::synth
