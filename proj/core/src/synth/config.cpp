#include "admitsim/synth/config.hpp"

#include <array>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "admitsim/common.hpp"

namespace admitsim::synth {
namespace {

constexpr std::array<const char*, kCovariateCount> kCovariateNames{
    "eligibility_score",    "middle_school_gpa",       "age",           "female",
    "parents_income",       "parents_edu",             "confidence",    "risk_willingness",
    "postpone_willing",     "rejection_is_failure",    "difficult_to_comprehend", "understands_sp"};

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, what);
}

void check_share(double v, const std::string& field) {
  require(std::isfinite(v) && v >= 0.0 && v <= 1.0, field, fmt::format("share {} outside [0, 1]", v));
}

void check_marginal(const ContinuousMarginal& m, const std::string& field) {
  try {
    TruncatedNormal::from_moments(m.mean, m.sd, m.lo, m.hi);
  } catch (const ConfigError& e) {
    throw ConfigError(field, e.what());
  }
}

}  // namespace

std::string covariate_name(Covariate c) { return kCovariateNames.at(static_cast<std::size_t>(c)); }

Covariate covariate_from_name(const std::string& name) {
  for (std::size_t k = 0; k < kCovariateCount; ++k) {
    if (name == kCovariateNames[k]) return static_cast<Covariate>(k);
  }
  throw ConfigError(name, "unknown covariate");
}

std::string to_string(OmissionRule rule) {
  return rule == OmissionRule::belief_threshold ? "belief-threshold" : "expected-utility";
}

OmissionRule omission_rule_from_name(const std::string& name) {
  if (name == "belief-threshold") return OmissionRule::belief_threshold;
  if (name == "expected-utility") return OmissionRule::expected_utility;
  throw ConfigError("behavior.omission_rule", fmt::format("unknown rule '{}'", name));
}

void validate(const SynthConfig& config) {
  const auto& pop = config.population;
  require(pop.n_students > 0, "population.n_students", "empty population");
  check_marginal(pop.eligibility_score, "population.score");
  check_marginal(pop.middle_school_gpa, "population.gpa");
  check_marginal(pop.age, "population.age");
  check_marginal(pop.parents_income, "population.parents_income");
  check_marginal(pop.parents_edu, "population.parents_edu");
  check_marginal(pop.confidence, "population.confidence");
  check_marginal(pop.risk_willingness, "population.risk_willingness");
  check_share(pop.female_share, "population.female_share");
  check_share(pop.rejection_is_failure_share, "population.rejection_is_failure_share");
  check_share(pop.difficult_to_comprehend_share, "population.difficult_to_comprehend_share");
  check_share(pop.understands_sp_share, "population.understands_sp_share");
  for (const auto& c : pop.correlations) {
    const std::string field = "correlation." + covariate_name(c.a) + "." + covariate_name(c.b);
    require(c.a != c.b, field, "a covariate cannot be correlated with itself");
    require(std::isfinite(c.rho) && std::abs(c.rho) < 1.0, field, "correlation must lie in (-1, 1)");
  }
  require(pop.region_width_km >= 0 && pop.region_height_km >= 0, "population.region", "negative region size");

  const auto& prog = config.programs;
  require(prog.n_programs > 0, "programs.n_programs", "need at least one program");
  require(prog.seat_ratio > 0, "programs.seat_ratio", "must be positive");
  require(prog.capacity_dispersion >= 0, "programs.capacity_dispersion", "must be non-negative");
  require(prog.theta_sd >= 0, "programs.theta_sd", "must be non-negative");
  require(prog.peer_quality_sd >= 0, "programs.peer_quality_sd", "must be non-negative");
  require(std::abs(prog.peer_quality_theta_corr) <= 1, "programs.peer_quality_theta_corr", "must lie in [-1, 1]");
  check_share(prog.gender_share_lo, "programs.gender_share_lo");
  check_share(prog.gender_share_hi, "programs.gender_share_hi");
  require(prog.gender_share_lo <= prog.gender_share_hi, "programs.gender_share_lo", "exceeds gender_share_hi");
  require(prog.peer_income_sd >= 0, "programs.peer_income_sd", "must be non-negative");
  require(std::isfinite(prog.peer_taste_centring), "programs.peer_taste_centring", "must be finite");

  const auto& beh = config.behavior;
  require(std::isfinite(beh.threshold) && beh.threshold >= 0 && beh.threshold <= 1, "behavior.threshold",
          "must lie in [0, 1]");
  require(std::isfinite(beh.utility_cost) && beh.utility_cost >= 0, "behavior.utility_cost",
          "must be non-negative");
  require(beh.beliefs.dispersion >= 0, "beliefs.dispersion", "must be non-negative");
  require(beh.beliefs.alt_dispersion >= 0, "beliefs.alt_dispersion", "must be non-negative");
  require(beh.beliefs.ceiling > 0 && beh.beliefs.ceiling < 1, "beliefs.ceiling", "must lie in (0, 1)");
  require(beh.beliefs.decay > 0, "beliefs.decay", "must be positive");
  require(beh.beliefs.decay_shape >= 0, "beliefs.decay_shape", "must be non-negative");
  check_share(beh.beliefs.anchored_share, "beliefs.anchored_share");
  check_share(beh.beliefs.student_share, "beliefs.student_share");
  check_share(beh.share_postponers, "behavior.share_postponers");
  check_share(beh.wave_2021_share, "behavior.wave_2021_share");
  require(beh.list_length_probs.size() == 8, "behavior.list_length_probs", "needs exactly 8 entries");
  double total = 0;
  for (double p : beh.list_length_probs) {
    require(std::isfinite(p) && p >= 0, "behavior.list_length_probs", "entries must be non-negative");
    total += p;
  }
  require(total > 0, "behavior.list_length_probs", "entries sum to zero");
}

}  // namespace admitsim::synth
