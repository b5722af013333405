#include "admitsim/synth/subjective_beliefs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "admitsim/rng.hpp"
#include "admitsim/synth/distributions.hpp"

namespace admitsim::synth {
namespace {

// Keeps log-odds finite when the anchor sits at 0 or 1.
constexpr double kProbFloor = 1e-6;

double clamp_prob(double p) { return std::clamp(p, kProbFloor, 1.0 - kProbFloor); }

}  // namespace

double anchor_belief(const BeliefModel& model, double score, const market::CutoffValue& prior) {
  return anchor_belief(model, score, prior, model.decay);
}

double anchor_belief(const BeliefModel& model, double score, const market::CutoffValue& prior, double decay) {
  if (prior.is_open() || score >= prior.value()) return model.ceiling;
  if (decay <= 0) return 0.0;
  return model.ceiling * std::exp((score - prior.value()) / decay);
}

SubjectiveBeliefs generate_beliefs(std::span<const StudentRecord> students,
                                   std::span<const market::CutoffValue> prior_cutoffs, const BeliefModel& model,
                                   std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(students.size());
  const auto m = static_cast<Eigen::Index>(prior_cutoffs.size());
  SubjectiveBeliefs out{Eigen::MatrixXd(n, m), std::vector<double>(students.size())};
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  std::gamma_distribution<double> own_decay(model.decay_shape > 0 ? model.decay_shape : 1.0,
                                            model.decay_shape > 0 ? model.decay / model.decay_shape : 1.0);
  std::uniform_real_distribution<double> unit;
  const double common = std::sqrt(model.student_share);
  const double idiosyncratic = std::sqrt(1.0 - model.student_share);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double score = students[static_cast<std::size_t>(i)].eligibility_score;
    const double a = normal(rng);
    const bool anchored = unit(rng) < model.anchored_share;
    const double decay = model.decay_shape > 0 ? own_decay(rng) : model.decay;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double eta = common * a + idiosyncratic * normal(rng);
      const double anchor =
          anchored ? anchor_belief(model, score, prior_cutoffs[static_cast<std::size_t>(j)], decay) : model.ceiling;
      const double base = logit(clamp_prob(anchor));
      out.main(i, j) = logistic(base + model.shift + model.dispersion * eta);
    }
    out.alternative[static_cast<std::size_t>(i)] = logistic(model.alt_mean_logit + model.alt_dispersion * normal(rng));
  }
  return out;
}

}  // namespace admitsim::synth
