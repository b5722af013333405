#include <gtest/gtest.h>

#include <cmath>

#include "admitsim/belief/analysis.hpp"
#include "admitsim/common.hpp"

using namespace admitsim;
using namespace admitsim::belief;
using market::CutoffValue;

namespace {

double grid(int k) { return k / 99.0; }

synth::TruthFlags flags(int student, bool non_truthful, bool omits, int top) {
  return {StudentId{student}, non_truthful, omits, ProgramId{top}};
}

}  // namespace

TEST(CombinedBelief, ComplementProductIdentityOnGrid) {
  for (int a = 0; a < 100; ++a) {
    for (int b = 0; b < 100; ++b) {
      const double p = grid(a), q = grid(b);
      const double c = combined_belief(p, q);
      EXPECT_NEAR(c, 1.0 - (1.0 - p) * (1.0 - q), 1e-12);
      EXPECT_GE(c, std::max(p, q) - 1e-15);
      EXPECT_LE(c, 1.0);
    }
  }
}

TEST(CombinedBelief, RejectsOutOfRange) {
  EXPECT_THROW(combined_belief(-0.1, 0.5), InputError);
  EXPECT_THROW(combined_belief(0.5, 1.01), InputError);
  EXPECT_THROW(combined_belief(std::nan(""), 0.5), InputError);
}

TEST(BeliefError, AntisymmetricAndBounded) {
  for (int a = 0; a < 100; ++a) {
    for (int b = 0; b < 100; ++b) {
      const double e = belief_error(grid(a), grid(b));
      EXPECT_EQ(e, -belief_error(grid(b), grid(a)));
      EXPECT_GE(e, -1.0);
      EXPECT_LE(e, 1.0);
    }
  }
  EXPECT_EQ(belief_error(0.3, 0.3), 0.0);
  EXPECT_THROW(belief_error(1.5, 0.2), InputError);
  EXPECT_THROW(belief_error(0.5, -0.2), InputError);
}

TEST(Pessimism, ClassifiesAroundTheBand) {
  EXPECT_EQ(classify_pessimism(-0.2, 0.1), PessimismClass::pessimistic);
  EXPECT_EQ(classify_pessimism(-0.1, 0.1), PessimismClass::calibrated);
  EXPECT_EQ(classify_pessimism(0.1, 0.1), PessimismClass::calibrated);
  EXPECT_EQ(classify_pessimism(0.15, 0.1), PessimismClass::optimistic);
  EXPECT_EQ(classify_pessimism(0.0, 0.0), PessimismClass::calibrated);
  EXPECT_THROW(classify_pessimism(0.0, -0.1), InputError);
  for (auto c : {PessimismClass::pessimistic, PessimismClass::calibrated, PessimismClass::optimistic}) {
    EXPECT_EQ(pessimism_class_from_name(to_string(c)), c);
  }
  EXPECT_THROW(pessimism_class_from_name("neutral"), InputError);
}

TEST(TopProgramBeliefs, PicksTheTrueTopColumn) {
  const std::vector<synth::TruthFlags> f{flags(1, false, false, 20), flags(2, true, true, 10)};
  const std::vector<ProgramId> programs{ProgramId{10}, ProgramId{20}};
  Eigen::MatrixXd subjective(2, 2), rational(2, 2);
  subjective << 0.1, 0.2, 0.3, 0.4;
  rational << 0.5, 0.25, 0.9, 0.1;
  const std::vector<double> alt{0.05, 0.5};
  const auto r = top_program_beliefs(f, programs, subjective, alt, rational, 0.1);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].program, ProgramId{20});
  EXPECT_EQ(r[0].subjective, 0.2);
  EXPECT_EQ(r[0].rational, 0.25);
  EXPECT_EQ(r[0].pessimism, PessimismClass::calibrated);
  EXPECT_EQ(r[0].alternative, 0.05);
  EXPECT_EQ(r[1].program, ProgramId{10});
  EXPECT_NEAR(r[1].error, -0.6, 1e-15);
  EXPECT_EQ(r[1].pessimism, PessimismClass::pessimistic);

  EXPECT_THROW(top_program_beliefs(f, programs, subjective, std::vector<double>{0.1}, rational, 0.1), InputError);
  const std::vector<synth::TruthFlags> stray{flags(1, false, false, 99), flags(2, false, false, 10)};
  EXPECT_THROW(top_program_beliefs(stray, programs, subjective, {}, rational, 0.1), InputError);
}

TEST(PayoffRelevance, ScoreAgainstRealizedCutoff) {
  const std::map<ProgramId, CutoffValue> realized{
      {ProgramId{1}, CutoffValue::at(9.0)}, {ProgramId{2}, CutoffValue::open()}, {ProgramId{3}, CutoffValue::at(11.0)}};
  EXPECT_TRUE(detect_payoff_relevant_omission(flags(1, true, true, 1), 9.0, realized).payoff_relevant);
  EXPECT_FALSE(detect_payoff_relevant_omission(flags(1, true, true, 1), 8.99, realized).payoff_relevant);
  EXPECT_TRUE(detect_payoff_relevant_omission(flags(1, true, true, 2), -3.0, realized).payoff_relevant);
  const auto v = detect_payoff_relevant_omission(flags(4, true, true, 3), 10.0, realized);
  EXPECT_EQ(v.student, StudentId{4});
  EXPECT_EQ(v.omitted_program, ProgramId{3});
  EXPECT_EQ(v.realized_cutoff, CutoffValue::at(11.0));
  EXPECT_THROW(detect_payoff_relevant_omission(flags(1, true, false, 1), 9.0, realized), InputError);
  EXPECT_THROW(detect_payoff_relevant_omission(flags(1, true, true, 7), 9.0, realized), InputError);
}

TEST(OutcomeRates, SharesOfStudentsOmittersAndMisreporters) {
  const std::map<ProgramId, CutoffValue> realized{{ProgramId{1}, CutoffValue::at(9.0)},
                                                  {ProgramId{2}, CutoffValue::at(5.0)}};
  const std::vector<synth::TruthFlags> f{flags(1, false, false, 1), flags(2, true, false, 1),
                                         flags(3, true, true, 1), flags(4, true, true, 2),
                                         flags(5, false, false, 2)};
  const std::vector<double> scores{10.0, 10.0, 8.0, 6.0, 4.0};
  const auto verdicts = omission_verdicts(f, scores, realized);
  ASSERT_EQ(verdicts.size(), 2u);
  const auto r = outcome_rates(f, verdicts);
  EXPECT_EQ(r.students, 5u);
  EXPECT_DOUBLE_EQ(r.non_truthful, 0.6);
  EXPECT_DOUBLE_EQ(r.omits_top, 0.4);
  EXPECT_DOUBLE_EQ(r.payoff_relevant, 0.2);
  EXPECT_DOUBLE_EQ(r.payoff_relevant_among_omitters, 0.5);
  EXPECT_DOUBLE_EQ(r.payoff_relevant_among_non_truthful, 1.0 / 3.0);
  EXPECT_THROW(omission_verdicts(f, std::vector<double>{1.0}, realized), InputError);

  const auto empty = outcome_rates({}, {});
  EXPECT_EQ(empty.omits_top, 0.0);
}
