#include "admitsim/belief/analysis.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

namespace admitsim::belief {
namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError(fmt::format("{} probability {} outside [0, 1]", what, p));
}

double share(std::size_t k, std::size_t n) { return n == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(n); }

}  // namespace

std::string to_string(PessimismClass c) {
  switch (c) {
    case PessimismClass::pessimistic: return "pessimistic";
    case PessimismClass::calibrated: return "calibrated";
    case PessimismClass::optimistic: return "optimistic";
  }
  return "calibrated";
}

PessimismClass pessimism_class_from_name(const std::string& name) {
  if (name == "pessimistic") return PessimismClass::pessimistic;
  if (name == "calibrated") return PessimismClass::calibrated;
  if (name == "optimistic") return PessimismClass::optimistic;
  throw InputError(fmt::format("unknown pessimism class '{}'", name));
}

double belief_error(double subjective, double rational) {
  check_probability(subjective, "subjective");
  check_probability(rational, "rational");
  return subjective - rational;
}

double combined_belief(double eligibility, double alternative) {
  check_probability(eligibility, "eligibility-channel");
  check_probability(alternative, "alternative-channel");
  return eligibility + (1.0 - eligibility) * alternative;
}

PessimismClass classify_pessimism(double error, double band) {
  if (!(band >= 0.0)) throw InputError(fmt::format("calibration band {} must be non-negative", band));
  if (error < -band) return PessimismClass::pessimistic;
  if (error > band) return PessimismClass::optimistic;
  return PessimismClass::calibrated;
}

std::vector<BeliefRecord> top_program_beliefs(std::span<const synth::TruthFlags> flags,
                                              std::span<const ProgramId> programs,
                                              const Eigen::MatrixXd& subjective,
                                              std::span<const double> alternative,
                                              const Eigen::MatrixXd& rational, double band) {
  const auto n = flags.size();
  if (static_cast<std::size_t>(subjective.rows()) != n || static_cast<std::size_t>(rational.rows()) != n ||
      static_cast<std::size_t>(subjective.cols()) != programs.size() ||
      static_cast<std::size_t>(rational.cols()) != programs.size() ||
      (!alternative.empty() && alternative.size() != n)) {
    throw InputError("belief tables do not match the student and program lists");
  }
  std::map<ProgramId, Eigen::Index> column;
  for (std::size_t j = 0; j < programs.size(); ++j) column.emplace(programs[j], static_cast<Eigen::Index>(j));

  std::vector<BeliefRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = column.find(flags[i].true_top);
    if (it == column.end()) throw InputError(fmt::format("unknown program {}", flags[i].true_top.value));
    const auto ii = static_cast<Eigen::Index>(i);
    BeliefRecord r;
    r.student = flags[i].student;
    r.program = flags[i].true_top;
    r.subjective = subjective(ii, it->second);
    if (!alternative.empty()) r.alternative = alternative[i];
    r.rational = rational(ii, it->second);
    r.error = belief_error(r.subjective, r.rational);
    r.pessimism = classify_pessimism(r.error, band);
    out.push_back(r);
  }
  return out;
}

OmissionVerdict detect_payoff_relevant_omission(const synth::TruthFlags& flags, double score,
                                                const std::map<ProgramId, market::CutoffValue>& realized) {
  if (!flags.omits_top) {
    throw InputError(fmt::format("student {} did not omit her most-preferred program", flags.student.value));
  }
  const auto it = realized.find(flags.true_top);
  if (it == realized.end()) throw InputError(fmt::format("no realized cutoff for program {}", flags.true_top.value));
  return {flags.student, flags.true_top, it->second.admits(score), it->second};
}

std::vector<OmissionVerdict> omission_verdicts(std::span<const synth::TruthFlags> flags,
                                               std::span<const double> scores,
                                               const std::map<ProgramId, market::CutoffValue>& realized) {
  if (scores.size() != flags.size()) throw InputError("scores must align with truth flags");
  std::vector<OmissionVerdict> out;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i].omits_top) out.push_back(detect_payoff_relevant_omission(flags[i], scores[i], realized));
  }
  return out;
}

OutcomeRates outcome_rates(std::span<const synth::TruthFlags> flags, std::span<const OmissionVerdict> verdicts) {
  OutcomeRates r;
  r.students = flags.size();
  std::size_t non_truthful = 0;
  std::size_t omitters = 0;
  for (const auto& f : flags) {
    non_truthful += f.non_truthful ? 1 : 0;
    omitters += f.omits_top ? 1 : 0;
  }
  std::unordered_set<StudentId> relevant;
  for (const auto& v : verdicts) {
    if (v.payoff_relevant) relevant.insert(v.student);
  }
  r.non_truthful = share(non_truthful, flags.size());
  r.omits_top = share(omitters, flags.size());
  r.payoff_relevant = share(relevant.size(), flags.size());
  r.payoff_relevant_among_omitters = share(relevant.size(), omitters);
  r.payoff_relevant_among_non_truthful = share(relevant.size(), non_truthful);
  return r;
}

}  // namespace admitsim::belief
