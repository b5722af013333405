#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/reports.hpp"

namespace admitsim::belief {

enum class PessimismClass { pessimistic, calibrated, optimistic };

std::string to_string(PessimismClass c);
PessimismClass pessimism_class_from_name(const std::string& name);

/// Subjective minus rational probability. Throws InputError unless both lie
/// in [0, 1].
double belief_error(double subjective, double rational);

/// Admission probability through either channel:
/// p_elig + (1 - p_elig) * p_alt. Throws InputError outside [0, 1].
double combined_belief(double eligibility, double alternative);

/// Pessimistic below -band, optimistic above +band, calibrated otherwise.
/// Throws InputError for a negative band.
PessimismClass classify_pessimism(double error, double band);

struct BeliefRecord {
  StudentId student;
  ProgramId program;
  double subjective{0.0};
  std::optional<double> alternative;
  double rational{0.0};
  double error{0.0};
  PessimismClass pessimism{PessimismClass::calibrated};

  friend bool operator==(const BeliefRecord&, const BeliefRecord&) = default;
};

/// One record per student for her true most-preferred program. Matrices are
/// indexed by student position (aligned with `flags`) and program position
/// (aligned with `programs`); `alternative` may be empty.
std::vector<BeliefRecord> top_program_beliefs(std::span<const synth::TruthFlags> flags,
                                              std::span<const ProgramId> programs,
                                              const Eigen::MatrixXd& subjective,
                                              std::span<const double> alternative,
                                              const Eigen::MatrixXd& rational, double band);

struct OmissionVerdict {
  StudentId student;
  ProgramId omitted_program;
  bool payoff_relevant{false};
  market::CutoffValue realized_cutoff{market::CutoffValue::open()};

  friend bool operator==(const OmissionVerdict&, const OmissionVerdict&) = default;
};

/// Whether an omitter's score clears the realized cutoff of the most-preferred
/// program she left off the top of her list. Throws InputError when the
/// student did not omit her top program or the program has no cutoff.
OmissionVerdict detect_payoff_relevant_omission(const synth::TruthFlags& flags, double score,
                                                const std::map<ProgramId, market::CutoffValue>& realized);

/// Verdicts for every omitter; `scores` is aligned with `flags`.
std::vector<OmissionVerdict> omission_verdicts(std::span<const synth::TruthFlags> flags,
                                               std::span<const double> scores,
                                               const std::map<ProgramId, market::CutoffValue>& realized);

struct OutcomeRates {
  std::size_t students{0};
  double non_truthful{0.0};
  double omits_top{0.0};
  double payoff_relevant{0.0};
  /// Payoff-relevant omissions as a share of omitters.
  double payoff_relevant_among_omitters{0.0};
  /// Payoff-relevant omissions as a share of non-truthful reporters.
  double payoff_relevant_among_non_truthful{0.0};
};

OutcomeRates outcome_rates(std::span<const synth::TruthFlags> flags, std::span<const OmissionVerdict> verdicts);

}  // namespace admitsim::belief
