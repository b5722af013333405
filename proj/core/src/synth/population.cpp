#include "admitsim/synth/population.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "admitsim/rng.hpp"

namespace admitsim::synth {
namespace {

std::size_t idx(Covariate c) { return static_cast<std::size_t>(c); }

Eigen::MatrixXd correlation_matrix(const PopulationConfig& pop) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(kCovariateCount, kCovariateCount);
  for (const auto& c : pop.correlations) {
    r(static_cast<Eigen::Index>(idx(c.a)), static_cast<Eigen::Index>(idx(c.b))) = c.rho;
    r(static_cast<Eigen::Index>(idx(c.b)), static_cast<Eigen::Index>(idx(c.a))) = c.rho;
  }
  return r;
}

}  // namespace

std::vector<StudentRecord> generate_students(const SynthConfig& config, std::size_t n, std::uint64_t seed,
                                             std::int64_t first_id) {
  validate(config);
  const auto& pop = config.population;
  const GaussianCopula copula(correlation_matrix(pop));
  const MarginalSampler score(pop.eligibility_score);
  const MarginalSampler gpa(pop.middle_school_gpa);
  const MarginalSampler age(pop.age);
  const MarginalSampler income(pop.parents_income);
  const MarginalSampler edu(pop.parents_edu);
  const MarginalSampler confidence(pop.confidence);
  const MarginalSampler risk(pop.risk_willingness);

  Rng rng = make_rng(seed);
  std::vector<StudentRecord> students;
  students.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::VectorXd u = copula.draw(rng);
    const auto at = [&](Covariate c) { return u(static_cast<Eigen::Index>(idx(c))); };

    StudentRecord s;
    s.id = StudentId{first_id + static_cast<std::int64_t>(k)};
    s.eligibility_score = score(at(Covariate::eligibility_score));
    s.middle_school_gpa = gpa(at(Covariate::middle_school_gpa));
    s.age = age(at(Covariate::age));
    s.female = at(Covariate::female) < pop.female_share;
    s.parents_income_pct = income(at(Covariate::parents_income));
    s.parents_edu_years = edu(at(Covariate::parents_edu));
    s.confidence = static_cast<int>(confidence(at(Covariate::confidence)));
    s.risk_willingness = static_cast<int>(risk(at(Covariate::risk_willingness)));
    s.postpone_willing = at(Covariate::postpone_willing) < config.behavior.share_postponers;
    s.rejection_is_failure = at(Covariate::rejection_is_failure) < pop.rejection_is_failure_share;
    s.difficult_to_comprehend = at(Covariate::difficult_to_comprehend) < pop.difficult_to_comprehend_share;
    s.survey_wave_2021 = draw_open_unit(rng) < config.behavior.wave_2021_share;
    if (s.survey_wave_2021) s.understands_sp = at(Covariate::understands_sp) < pop.understands_sp_share;
    s.location = {pop.region_width_km * draw_open_unit(rng), pop.region_height_km * draw_open_unit(rng)};
    students.push_back(s);
  }
  return students;
}

std::pair<std::vector<market::ProgramRecord>, std::vector<double>> generate_programs(const SynthConfig& config,
                                                                                     std::size_t n_students,
                                                                                     std::uint64_t seed) {
  validate(config);
  const auto& cfg = config.programs;
  const auto& pop = config.population;
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;

  const std::size_t m = cfg.n_programs;
  std::vector<market::ProgramRecord> programs(m);
  std::vector<double> theta(m);
  std::vector<double> weight(m);
  const double rho = cfg.peer_quality_theta_corr;
  for (std::size_t j = 0; j < m; ++j) {
    const double z_theta = normal(rng);
    const double z_pq = normal(rng);
    const double z_cap = normal(rng);
    theta[j] = cfg.theta_sd * z_theta;

    auto& p = programs[j];
    p.id = ProgramId{static_cast<std::int64_t>(j + 1)};
    p.peer_quality = cfg.peer_quality_mean + cfg.peer_quality_sd * (rho * z_theta + std::sqrt(1 - rho * rho) * z_pq);
    p.same_gender_share_female =
        cfg.gender_share_lo + (cfg.gender_share_hi - cfg.gender_share_lo) * draw_open_unit(rng);
    p.peer_parents_income = std::clamp(cfg.peer_income_mean + cfg.peer_income_sd * normal(rng), 0.0, 1.0);
    p.location = {pop.region_width_km * draw_open_unit(rng), pop.region_height_km * draw_open_unit(rng)};
    weight[j] = std::exp(cfg.capacity_dispersion * z_cap + cfg.capacity_theta_slope * theta[j]);
  }
  double total_weight = 0;
  for (double w : weight) total_weight += w;
  const double seats = cfg.seat_ratio * static_cast<double>(n_students);
  const double taste =
      cfg.peer_taste_centring * config.utility.gamma[0] * pop.eligibility_score.mean / kPeerQualityScale;
  for (std::size_t j = 0; j < m; ++j) theta[j] -= taste * (programs[j].peer_quality - cfg.peer_quality_mean);
  for (std::size_t j = 0; j < m; ++j) {
    programs[j].capacity = std::max(1, static_cast<int>(std::lround(seats * weight[j] / total_weight)));
  }
  return {std::move(programs), std::move(theta)};
}

Population generate_population(const SynthConfig& config, std::uint64_t seed) {
  validate(config);
  Population out;
  out.students = generate_students(config, config.population.n_students, derive_seed(seed, "students"));
  auto [programs, theta] = generate_programs(config, config.population.n_students, derive_seed(seed, "programs"));
  out.programs = std::move(programs);
  out.theta = std::move(theta);
  return out;
}

}  // namespace admitsim::synth
