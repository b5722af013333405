#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "admitsim/synth/distributions.hpp"

namespace admitsim::synth {

/// Order of the student covariates inside the Gaussian copula.
enum class Covariate : std::size_t {
  eligibility_score,
  middle_school_gpa,
  age,
  female,
  parents_income,
  parents_edu,
  confidence,
  risk_willingness,
  postpone_willing,
  rejection_is_failure,
  difficult_to_comprehend,
  understands_sp,
  count_
};

inline constexpr std::size_t kCovariateCount = static_cast<std::size_t>(Covariate::count_);

std::string covariate_name(Covariate c);
/// Throws ConfigError for unknown names.
Covariate covariate_from_name(const std::string& name);

struct CorrelationEntry {
  Covariate a;
  Covariate b;
  double rho;
};

struct PopulationConfig {
  std::size_t n_students{10000};

  ContinuousMarginal eligibility_score{8.65, 2.03, -3.0, 12.2, false};
  ContinuousMarginal middle_school_gpa{8.75, 1.88, -3.0, 12.2, false};
  ContinuousMarginal age{20.6, 2.47, 17.0, 60.0, false};
  double female_share{0.64};
  ContinuousMarginal parents_income{0.58, 0.25, 0.0, 1.0, false};
  ContinuousMarginal parents_edu{14.9, 2.64, 7.0, 22.0, false};
  ContinuousMarginal confidence{6.72, 2.15, 0.0, 10.0, true};
  ContinuousMarginal risk_willingness{5.56, 2.17, 0.0, 10.0, true};
  double rejection_is_failure_share{0.55};
  double difficult_to_comprehend_share{0.38};
  /// Asked only in the 2021 wave; missing for 2020 respondents.
  double understands_sp_share{0.60};

  /// Pairwise correlations of the copula; unlisted pairs are independent.
  std::vector<CorrelationEntry> correlations{{Covariate::eligibility_score, Covariate::middle_school_gpa, 0.6}};

  double region_width_km{350.0};
  double region_height_km{400.0};
};

struct ProgramConfig {
  std::size_t n_programs{30};
  double seat_ratio{0.85};           // total seats relative to students
  double capacity_dispersion{0.4};   // log-scale sd of capacity weights
  double capacity_theta_slope{-0.4}; // log-capacity tilt per unit of theta
  double theta_sd{0.8};
  double peer_quality_mean{8.6};
  double peer_quality_sd{1.2};
  double peer_quality_theta_corr{0.5};
  double gender_share_lo{0.2};
  double gender_share_hi{0.8};
  double peer_income_mean{0.58};
  double peer_income_sd{0.08};
  /// Share of the mean student's taste for peer quality folded into theta.
  /// At 1, peer quality attracts above-average scorers and repels the rest;
  /// at 0, every student values it.
  double peer_taste_centring{1.0};
};

inline constexpr std::size_t kFeatureCount = 3;
/// Divisor of the score x peer-quality product.
inline constexpr double kPeerQualityScale = 10.0;
inline const std::array<std::string, kFeatureCount> kFeatureNames{"peer_quality", "same_gender_share",
                                                                  "peer_parents_income"};

struct UtilityConfig {
  /// Coefficients on (peer quality, same-gender share, peer parents income).
  std::array<double, kFeatureCount> gamma{9.24, 2.25, 5.66};
};

enum class OmissionRule { belief_threshold, expected_utility };

std::string to_string(OmissionRule rule);
OmissionRule omission_rule_from_name(const std::string& name);

/// How subjective admission beliefs are formed. Each student anchors on the
/// previous year's published cutoff: at or above it the anchor is `ceiling`,
/// below it the anchor decays exponentially with the score gap at rate
/// 1/`decay`. The anchor's log-odds are then shifted by `shift` and perturbed
/// by normal noise of sd `dispersion`, a share `student_share` of whose
/// variance is common to all of the student's programs. With `decay_shape`
/// positive, each student draws their own decay from a gamma distribution
/// with mean `decay` and that shape. Only a share `anchored_share` of
/// students anchor on cutoffs at all; the rest start every program from
/// `ceiling`.
struct BeliefModel {
  double ceiling{0.97};
  double decay{0.8};
  double decay_shape{0.0};
  double anchored_share{1.0};
  double shift{0.0};
  double dispersion{1.0};
  double student_share{0.5};
  double alt_mean_logit{-2.0};
  double alt_dispersion{1.0};
};

/// Log-multipliers on the personal omission threshold (or cost), per unit of
/// each trait. Scales are centred at 5 and divided by 2.5.
struct TraitLoadings {
  double confidence{-0.12};
  double risk_willingness{-0.08};
  double postpone_willing{-0.25};
  double rejection_is_failure{0.10};
  double difficult_to_comprehend{0.20};
  double understands_sp{-0.10};
};

struct BehaviorConfig {
  OmissionRule rule{OmissionRule::belief_threshold};
  double threshold{0.5};     // belief-threshold rule: drop if belief < threshold
  double utility_cost{0.0};  // expected-utility rule: drop if belief * gain < cost
  BeliefModel beliefs;
  TraitLoadings loadings;
  /// Distribution of intended list lengths 1..8.
  std::vector<double> list_length_probs{0.36, 0.23, 0.17, 0.11, 0.06, 0.03, 0.02, 0.02};
  double share_postponers{0.70};
  double wave_2021_share{0.45};
  /// Warm-up cohorts used to produce the published prior-year cutoffs.
  std::size_t history_years{2};
};

struct SynthConfig {
  PopulationConfig population;
  ProgramConfig programs;
  UtilityConfig utility;
  BehaviorConfig behavior;
};

/// Throws ConfigError naming the first offending field.
void validate(const SynthConfig& config);

}  // namespace admitsim::synth
