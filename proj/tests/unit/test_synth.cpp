#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "admitsim/common.hpp"
#include "admitsim/market/matching.hpp"
#include "admitsim/synth/distributions.hpp"
#include "admitsim/synth/generator.hpp"
#include "admitsim/synth/kink.hpp"
#include "admitsim/synth/population.hpp"
#include "admitsim/synth/reports.hpp"
#include "admitsim/synth/subjective_beliefs.hpp"
#include "admitsim/synth/utilities.hpp"

using namespace admitsim;
using namespace admitsim::synth;

namespace {

SynthConfig small_config(std::size_t n = 2000) {
  SynthConfig c;
  c.population.n_students = n;
  c.programs.n_programs = 12;
  return c;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

double corr(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

TEST(TruncatedNormal, HitsTargetMoments) {
  const auto d = TruncatedNormal::from_moments(8.65, 2.03, -3.0, 12.2);
  EXPECT_NEAR(d.mean(), 8.65, 1e-8);
  EXPECT_NEAR(d.sd(), 2.03, 1e-8);
  EXPECT_LE(d.quantile(0.999999), 12.2);
  EXPECT_GE(d.quantile(1e-9), -3.0);
}

TEST(TruncatedNormal, RejectsUnattainableMoments) {
  EXPECT_THROW(TruncatedNormal::from_moments(5.0, 1.0, 6.0, 7.0), ConfigError);
  EXPECT_THROW(TruncatedNormal::from_moments(0.5, 5.0, 0.0, 1.0), ConfigError);
}

TEST(Population, MarginalsAndCopulaCorrelation) {
  const auto students = generate_students(small_config(), 20000, 9);
  std::vector<double> score, gpa;
  double female = 0;
  for (const auto& s : students) {
    score.push_back(s.eligibility_score);
    gpa.push_back(s.middle_school_gpa);
    female += s.female;
    EXPECT_GE(s.confidence, 0);
    EXPECT_LE(s.confidence, 10);
    EXPECT_EQ(s.understands_sp.has_value(), s.survey_wave_2021);
  }
  EXPECT_NEAR(mean(score), 8.65, 0.05);
  EXPECT_NEAR(sd(score), 2.03, 0.05);
  EXPECT_NEAR(female / students.size(), 0.64, 0.015);
  EXPECT_NEAR(corr(score, gpa), 0.6, 0.03);
}

TEST(Population, DeterministicPerSeed) {
  const auto a = generate_population(small_config(), 4);
  const auto b = generate_population(small_config(), 4);
  const auto c = generate_population(small_config(), 5);
  EXPECT_EQ(a.students, b.students);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_NE(a.students, c.students);
}

TEST(Population, EmptyPopulationRejected) {
  EXPECT_THROW(generate_population(small_config(0), 1), ConfigError);
}

TEST(Utilities, MatchTheUtilityFormula) {
  const auto pop = generate_population(small_config(50), 2);
  const std::array<double, kFeatureCount> gamma{9.24, 2.25, 5.66};
  const auto u = realize_utilities(pop.students, pop.programs, gamma, pop.theta, 3, false);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < pop.programs.size(); ++j) {
      const auto& s = pop.students[i];
      const auto& p = pop.programs[j];
      const double share = s.female ? p.same_gender_share_female : 1 - p.same_gender_share_female;
      const double expect = pop.theta[j] - distance_km(s.location, p.location) / 1000.0 +
                            9.24 * s.eligibility_score * p.peer_quality / kPeerQualityScale + 2.25 * share +
                            5.66 * s.parents_income_pct * p.peer_parents_income;
      EXPECT_NEAR(u.total(i, j), expect, 1e-12);
    }
  }
  EXPECT_THROW(realize_utilities(pop.students, pop.programs, gamma, std::vector<double>{1.0}, 3), InputError);
}

TEST(Beliefs, AnchorIsFlatAboveAndDecaysBelowThePriorCutoff) {
  BeliefModel m;
  m.ceiling = 0.9;
  m.decay = 2.0;
  const auto prior = market::CutoffValue::at(9.0);
  EXPECT_DOUBLE_EQ(anchor_belief(m, 9.0, prior), 0.9);
  EXPECT_DOUBLE_EQ(anchor_belief(m, 11.0, prior), 0.9);
  EXPECT_DOUBLE_EQ(anchor_belief(m, 7.0, prior), 0.9 * std::exp(-1.0));
  EXPECT_DOUBLE_EQ(anchor_belief(m, 0.0, market::CutoffValue::open()), 0.9);
}

TEST(Beliefs, AnchoredShareSelectsWhoReadsCutoffs) {
  std::vector<StudentRecord> students(4000);
  for (std::size_t i = 0; i < students.size(); ++i) {
    students[i].id = StudentId{static_cast<std::int64_t>(i + 1)};
    students[i].eligibility_score = 6.0;
  }
  const std::vector<market::CutoffValue> prior{market::CutoffValue::at(8.0), market::CutoffValue::open()};
  BeliefModel m;
  m.ceiling = 0.9;
  m.decay = 2.0;
  m.dispersion = 0.0;

  m.anchored_share = 0.0;
  auto b = generate_beliefs(students, prior, m, 5);
  for (Eigen::Index i = 0; i < b.main.rows(); ++i) EXPECT_NEAR(b.main(i, 0), 0.9, 1e-12);

  m.anchored_share = 1.0;
  b = generate_beliefs(students, prior, m, 5);
  for (Eigen::Index i = 0; i < b.main.rows(); ++i) {
    EXPECT_NEAR(b.main(i, 0), 0.9 * std::exp(-1.0), 1e-12);
    EXPECT_NEAR(b.main(i, 1), 0.9, 1e-12);
  }

  m.anchored_share = 0.3;
  b = generate_beliefs(students, prior, m, 5);
  double anchored = 0;
  for (Eigen::Index i = 0; i < b.main.rows(); ++i) anchored += b.main(i, 0) < 0.8 ? 1 : 0;
  EXPECT_NEAR(anchored / static_cast<double>(students.size()), 0.3, 0.03);

  SynthConfig cfg;
  cfg.behavior.beliefs.anchored_share = 1.5;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(Reports, ZeroThresholdIsTruthful) {
  auto cfg = small_config(3000);
  cfg.behavior.threshold = 0.0;
  const auto g = generate_market(cfg, 8);
  for (std::size_t i = 0; i < g.reports.rols.size(); ++i) {
    const auto order = preference_order(g.utilities, i);
    const auto& rol = g.reports.rols[i].entries;
    ASSERT_EQ(rol.size(), g.reports.intended_length[i]);
    for (std::size_t k = 0; k < rol.size(); ++k) EXPECT_EQ(rol[k], g.population.programs[order[k]].id);
    EXPECT_FALSE(g.reports.flags[i].non_truthful);
  }
}

TEST(Reports, ThresholdOneKeepsOnlyCertainPrograms) {
  auto cfg = small_config(200);
  cfg.behavior.threshold = 1.0;
  cfg.behavior.loadings = {0, 0, 0, 0, 0, 0};
  const auto pop = generate_population(cfg, 1);
  const auto u = realize_utilities(pop.students, pop.programs, cfg.utility.gamma, pop.theta, 2);
  const auto n = static_cast<Eigen::Index>(pop.students.size());
  const auto m = static_cast<Eigen::Index>(pop.programs.size());
  Eigen::MatrixXd beliefs = Eigen::MatrixXd::Constant(n, m, 0.4);
  for (Eigen::Index i = 0; i < n; ++i) beliefs(i, (i * 7) % m) = 1.0;
  const auto reports = generate_reports(pop.students, pop.programs, u, beliefs, cfg.behavior, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& rol = reports.rols[static_cast<std::size_t>(i)].entries;
    ASSERT_EQ(rol.size(), 1u);
    EXPECT_EQ(rol[0], pop.programs[static_cast<std::size_t>((i * 7) % m)].id);
    const auto& f = reports.flags[static_cast<std::size_t>(i)];
    EXPECT_EQ(f.omits_top, rol[0] != f.true_top);
  }
}

TEST(Reports, FlagsAreConsistentAndMonotoneInThreshold) {
  auto cfg = small_config(3000);
  double previous = -1.0;
  for (double tau : {0.0, 0.1, 0.3, 0.6, 0.9}) {
    cfg.behavior.threshold = tau;
    const auto g = generate_market(cfg, 21);
    double non_truthful = 0;
    for (const auto& f : g.reports.flags) {
      if (f.omits_top) EXPECT_TRUE(f.non_truthful);
      non_truthful += f.non_truthful;
    }
    EXPECT_GE(non_truthful, previous) << "tau " << tau;
    previous = non_truthful;
  }
}

TEST(Reports, TruthFlagsDefinition) {
  const std::vector<ProgramId> order{ProgramId{3}, ProgramId{1}, ProgramId{2}};
  const auto truthful = truth_flags(StudentId{1}, std::vector<ProgramId>{ProgramId{3}, ProgramId{1}}, order, 2);
  EXPECT_FALSE(truthful.non_truthful);
  const auto skipped = truth_flags(StudentId{1}, std::vector<ProgramId>{ProgramId{3}, ProgramId{2}}, order, 2);
  EXPECT_TRUE(skipped.non_truthful);
  EXPECT_FALSE(skipped.omits_top);
  const auto omitted = truth_flags(StudentId{1}, std::vector<ProgramId>{ProgramId{1}}, order, 1);
  EXPECT_TRUE(omitted.omits_top);
  EXPECT_EQ(omitted.true_top, ProgramId{3});
}

TEST(Generator, ReproducibleAndAligned) {
  const auto cfg = small_config(1500);
  const auto a = generate_market(cfg, 77);
  const auto b = generate_market(cfg, 77);
  EXPECT_EQ(a.reports.rols.size(), 1500u);
  EXPECT_EQ(a.prior_cutoffs.size(), cfg.programs.n_programs);
  EXPECT_EQ(a.history.size(), cfg.behavior.history_years);
  EXPECT_EQ(a.prior_cutoffs, a.history.back());
  EXPECT_EQ(a.population.students, b.population.students);
  EXPECT_TRUE(a.beliefs.main.isApprox(b.beliefs.main, 0.0));
  for (std::size_t i = 0; i < a.reports.rols.size(); ++i) EXPECT_EQ(a.reports.rols[i].entries, b.reports.rols[i].entries);
}

TEST(Kink, RejectsTooFewBinsAndMisalignedCutoffs) {
  const auto g = generate_market(small_config(300), 1);
  KinkOptions o;
  o.n_bins = 4;
  EXPECT_THROW(application_kink_curve(g.market(), g.prior_cutoffs, o), InputError);
  EXPECT_THROW(application_kink_curve(g.market(), std::vector<market::CutoffValue>{}, {}), InputError);
}

TEST(Kink, EmptyBinsHaveNoRateAndCountsAddUp) {
  const auto g = generate_market(small_config(3000), 4);
  KinkOptions o;
  o.half_width = 20.0;
  const auto curve = application_kink_curve(g.market(), g.prior_cutoffs, o);
  ASSERT_EQ(curve.bins.size(), 33u);
  std::size_t selective = 0;
  for (const auto& c : g.prior_cutoffs) selective += !c.is_open() && c.value() > o.min_prior_cutoff;
  std::size_t pairs = 0;
  for (const auto& b : curve.bins) {
    pairs += b.pairs;
    EXPECT_EQ(b.rate.has_value(), b.pairs > 0);
    if (b.raw_rate) EXPECT_DOUBLE_EQ(*b.raw_rate, static_cast<double>(b.applications) / b.pairs);
  }
  EXPECT_EQ(pairs, selective * 3000);
}

TEST(Kink, DiagnosticFindsAnArtificialKink) {
  KinkCurve curve;
  for (int k = 0; k < 33; ++k) {
    KinkBin b;
    b.lo = -4.0 + 8.0 * k / 33.0;
    b.hi = -4.0 + 8.0 * (k + 1) / 33.0;
    b.pairs = 10000;
    const double x = b.center();
    b.rate = x < 0 ? 0.3 + 0.05 * x : 0.3;
    b.raw_rate = b.rate;
    curve.bins.push_back(b);
  }
  const auto d = diagnose_kink(curve, 3);
  EXPECT_EQ(d.zero_bin, 16u);
  EXPECT_TRUE(d.max_at_zero());
  EXPECT_LT(*d.slope_change[16], 0.0);
  EXPECT_LT(d.placebo_p, 0.1);
}
