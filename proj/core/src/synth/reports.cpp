#include "admitsim/synth/reports.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "admitsim/rng.hpp"

namespace admitsim::synth {
namespace {

double scale10(int v) { return (static_cast<double>(v) - 5.0) / 2.5; }

}  // namespace

double trait_multiplier(const TraitLoadings& w, const StudentRecord& s) {
  double z = w.confidence * scale10(s.confidence) + w.risk_willingness * scale10(s.risk_willingness);
  z += w.postpone_willing * (s.postpone_willing ? 1.0 : 0.0);
  z += w.rejection_is_failure * (s.rejection_is_failure ? 1.0 : 0.0);
  z += w.difficult_to_comprehend * (s.difficult_to_comprehend ? 1.0 : 0.0);
  z += w.understands_sp * (s.understands_sp.value_or(false) ? 1.0 : 0.0);
  return std::exp(z);
}

TruthFlags truth_flags(StudentId student, std::span<const ProgramId> submitted,
                       std::span<const ProgramId> true_order, std::size_t intended_length) {
  TruthFlags f;
  f.student = student;
  f.true_top = true_order.front();
  const std::size_t len = std::min(intended_length, true_order.size());
  f.non_truthful = !std::equal(submitted.begin(), submitted.end(), true_order.begin(), true_order.begin() + len);
  f.omits_top = submitted.empty() || submitted.front() != f.true_top;
  return f;
}

Reports generate_reports(std::span<const StudentRecord> students, std::span<const market::ProgramRecord> programs,
                         const UtilityMatrix& utilities, const Eigen::MatrixXd& beliefs,
                         const BehaviorConfig& behavior, std::uint64_t seed) {
  const std::size_t n = students.size();
  const std::size_t m = programs.size();
  if (utilities.num_students() != n || utilities.num_programs() != m ||
      static_cast<std::size_t>(beliefs.rows()) != n || static_cast<std::size_t>(beliefs.cols()) != m) {
    throw InputError(fmt::format("reports need {}x{} utilities and beliefs", n, m));
  }
  Rng rng = make_rng(seed);
  std::discrete_distribution<std::size_t> length_dist(behavior.list_length_probs.begin(),
                                                       behavior.list_length_probs.end());
  Reports out;
  out.rols.reserve(n);
  out.flags.reserve(n);
  out.intended_length.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::size_t intended = std::min(length_dist(rng) + 1, std::min(m, market::kMaxListLength));
    const std::vector<std::uint32_t> order = preference_order(utilities, i);
    const double multiplier = trait_multiplier(behavior.loadings, students[i]);

    const auto keep = [&](std::size_t k) {
      const auto j = order[k];
      const double belief = beliefs(ii, static_cast<Eigen::Index>(j));
      if (behavior.rule == OmissionRule::belief_threshold) {
        return belief >= std::clamp(behavior.threshold * multiplier, 0.0, 1.0);
      }
      if (k + 1 == order.size()) return true;
      const double gain = utilities.total(i, j) - utilities.total(i, order[k + 1]);
      return belief * gain >= behavior.utility_cost * multiplier;
    };

    market::RankOrderedList rol{students[i].id, {}};
    for (std::size_t k = 0; k < order.size() && rol.entries.size() < intended; ++k) {
      if (keep(k)) rol.entries.push_back(programs[order[k]].id);
    }
    if (rol.entries.empty()) {
      Eigen::Index best = 0;
      beliefs.row(ii).maxCoeff(&best);
      rol.entries.push_back(programs[static_cast<std::size_t>(best)].id);
    }

    std::vector<ProgramId> true_ids(m);
    for (std::size_t k = 0; k < m; ++k) true_ids[k] = programs[order[k]].id;
    out.flags.push_back(truth_flags(students[i].id, rol.entries, true_ids, intended));
    out.rols.push_back(std::move(rol));
    out.intended_length.push_back(intended);
  }
  return out;
}

}  // namespace admitsim::synth
