#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "admitsim/common.hpp"
#include "admitsim/market/matching.hpp"
#include "admitsim/market/random_instances.hpp"
#include "admitsim/market/stability.hpp"
#include "admitsim/market/strategy_proofness.hpp"
#include "admitsim/rng.hpp"
#include "oracles.hpp"

using namespace admitsim;
using namespace admitsim::market;

namespace {

ProgramId P(int v) { return ProgramId{v}; }
StudentId S(int v) { return StudentId{v}; }

Market three_by_two() {
  Market m;
  m.applicants = {{S(1), 10.0}, {S(2), 9.0}, {S(3), 8.0}};
  m.programs = {{P(1), 1}, {P(2), 1}};
  m.rols = {{S(1), {P(1), P(2)}}, {S(2), {P(1), P(2)}}, {S(3), {P(1)}}};
  return m;
}

}  // namespace

TEST(DeferredAcceptance, HandExample) {
  const auto out = run_matching(three_by_two());
  EXPECT_EQ(out.assignment.at(S(1)), P(1));
  EXPECT_EQ(out.assignment.at(S(2)), P(2));
  EXPECT_EQ(out.assignment.at(S(3)), std::nullopt);
  EXPECT_EQ(out.cutoffs.at(P(1)), CutoffValue::at(10.0));
  EXPECT_EQ(out.cutoffs.at(P(2)), CutoffValue::at(9.0));
}

TEST(DeferredAcceptance, UndersubscribedProgramIsOpen) {
  Market m = three_by_two();
  m.programs[1].capacity = 5;
  const auto out = run_matching(m);
  EXPECT_TRUE(out.cutoffs.at(P(2)).is_open());
  EXPECT_TRUE(out.cutoffs.at(P(2)).admits(-3.0));
}

TEST(DeferredAcceptance, EqualScoresBreakTiesByLowerId) {
  Market m;
  m.applicants = {{S(7), 9.0}, {S(3), 9.0}};
  m.programs = {{P(1), 1}};
  m.rols = {{S(7), {P(1)}}, {S(3), {P(1)}}};
  const auto out = run_matching(m);
  EXPECT_EQ(out.assignment.at(S(3)), P(1));
  EXPECT_EQ(out.assignment.at(S(7)), std::nullopt);
}

TEST(DeferredAcceptance, StudentWithoutListStaysUnassigned) {
  Market m = three_by_two();
  m.applicants.push_back({S(4), 12.0});
  const auto out = run_matching(m);
  EXPECT_EQ(out.assignment.at(S(4)), std::nullopt);
  EXPECT_EQ(out.assignment.at(S(1)), P(1));
}

TEST(IndexedMarket, RejectsMalformedInput) {
  Market dup = three_by_two();
  dup.applicants.push_back({S(1), 1.0});
  EXPECT_THROW(IndexedMarket{dup}, InputError);

  Market unknown = three_by_two();
  unknown.rols[0].entries.push_back(P(99));
  EXPECT_THROW(IndexedMarket{unknown}, InputError);

  Market repeated = three_by_two();
  repeated.rols[2].entries = {P(1), P(1)};
  EXPECT_THROW(IndexedMarket{repeated}, InputError);

  Market capacity = three_by_two();
  capacity.programs[0].capacity = 0;
  EXPECT_THROW(IndexedMarket{capacity}, InputError);

  Market too_long;
  too_long.applicants = {{S(1), 5.0}};
  for (int j = 1; j <= 9; ++j) too_long.programs.push_back({P(j), 1});
  RankOrderedList rol{S(1), {}};
  for (int j = 1; j <= 9; ++j) rol.entries.push_back(P(j));
  too_long.rols = {rol};
  EXPECT_THROW(IndexedMarket{too_long}, InputError);
}

TEST(DeferredAcceptance, MatchesStudentOptimalStableAssignment) {
  Rng rng = make_rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = random_small_instance(rng, 5, 4);
    const auto out = run_matching(inst.market);
    const auto stable = oracle::all_stable_assignments(inst.market);
    ASSERT_FALSE(stable.empty());
    ASSERT_NE(std::find(stable.begin(), stable.end(), out.assignment), stable.end()) << "trial " << trial;
    for (const auto& other : stable) {
      EXPECT_TRUE(oracle::weakly_preferred_by_all(inst.market, out.assignment, other)) << "trial " << trial;
    }
  }
}

TEST(Stability, DetectsBlockingPairInHandMadeOutcome) {
  const Market m = three_by_two();
  MatchOutcome bad = run_matching(m);
  bad.assignment[S(1)] = P(2);
  bad.assignment[S(2)] = P(1);
  bad.cutoffs.insert_or_assign(P(1), CutoffValue::at(9.0));
  bad.cutoffs.insert_or_assign(P(2), CutoffValue::at(10.0));
  const auto pairs = check_stability(bad, m);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].student, S(1));
  EXPECT_EQ(pairs[0].program, P(1));
}

TEST(Stability, RandomMarketsHaveNoBlockingPairsAndSelfConsistentCutoffs) {
  Rng rng = make_rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_market(rng, 300, 12, 0.8);
    const auto out = run_matching(m);
    EXPECT_TRUE(check_stability(out, m).empty());
    EXPECT_TRUE(check_feasibility(out, m).empty());
    EXPECT_EQ(assign_by_cutoffs(m, out.cutoffs), out.assignment);
  }
}

TEST(Stability, RejectsOutcomeFromAnotherMarket) {
  const Market m = three_by_two();
  MatchOutcome out = run_matching(m);
  out.assignment[S(42)] = std::nullopt;
  EXPECT_THROW(check_stability(out, m), InputError);
}

TEST(Feasibility, CapacityPlusOneIsCaught) {
  Rng rng = make_rng(3);
  std::size_t issues = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_market(rng, 200, 8, 0.7);
    const auto out = capacity_plus_one_mechanism(m);
    for (const auto& v : check_feasibility(out, m)) {
      if (v.issue == FeasibilityIssue::over_capacity) ++issues;
    }
  }
  EXPECT_GT(issues, 0u);
}

TEST(StrategyProofness, EnumerationCounts) {
  // Ordered selections of 1..k items from 4: 4 + 12 + 24 + 24.
  EXPECT_EQ(enumerate_lists({P(1), P(2), P(3), P(4)}, 4).size(), 64u);
  EXPECT_EQ(enumerate_lists({P(1), P(2), P(3), P(4)}, 2).size(), 16u);
}

TEST(StrategyProofness, NoProfitableDeviationOnRandomInstances) {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = random_small_instance(rng, 5, 4);
    const auto report = verify_strategy_proofness(inst, inst.market.programs.size());
    EXPECT_TRUE(report.truth_dominant()) << "trial " << trial;
    EXPECT_GT(report.deviations_checked, 0u);
  }
}

TEST(StrategyProofness, BostonStyleMechanismIsManipulable) {
  // Immediate acceptance: seats are final once given out in a round.
  const Mechanism boston = [](const Market& m) {
    MatchOutcome out;
    std::map<ProgramId, int> left;
    for (const auto& p : m.programs) left[p.id] = p.capacity;
    for (const auto& a : m.applicants) out.assignment[a.id] = std::nullopt;
    for (std::size_t round = 0; round < kMaxListLength; ++round) {
      std::vector<std::pair<double, StudentId>> bids;
      std::map<StudentId, ProgramId> want;
      for (const auto& r : m.rols) {
        if (out.assignment[r.student] || round >= r.entries.size()) continue;
        want[r.student] = r.entries[round];
      }
      for (const auto& a : m.applicants) {
        if (want.count(a.id)) bids.push_back({a.score, a.id});
      }
      std::sort(bids.begin(), bids.end(), [](auto x, auto y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
      for (const auto& [score, s] : bids) {
        if (left[want[s]] > 0) {
          --left[want[s]];
          out.assignment[s] = want[s];
        }
      }
    }
    for (const auto& p : m.programs) out.cutoffs.insert_or_assign(p.id, CutoffValue::open());
    return out;
  };
  // Student 3 loses program 1 to student 1 in round one, by which time
  // program 2 has gone to student 2; listing program 2 first secures it.
  PreferenceInstance inst;
  inst.market.applicants = {{S(1), 10.0}, {S(2), 5.0}, {S(3), 8.0}};
  inst.market.programs = {{P(1), 1}, {P(2), 1}};
  inst.market.rols = {{S(1), {P(1), P(2)}}, {S(2), {P(2), P(1)}}, {S(3), {P(1), P(2)}}};
  inst.true_preferences = {{P(1), P(2)}, {P(2), P(1)}, {P(1), P(2)}};
  const auto report = verify_strategy_proofness(inst, 2, boston);
  EXPECT_FALSE(report.truth_dominant());
}

TEST(StrategyProofness, RejectsOversizedInstances) {
  PreferenceInstance inst;
  for (int i = 1; i <= 6; ++i) inst.market.applicants.push_back({S(i), static_cast<double>(i)});
  inst.market.programs = {{P(1), 1}};
  for (int i = 1; i <= 6; ++i) {
    inst.market.rols.push_back({S(i), {P(1)}});
    inst.true_preferences.push_back({P(1)});
  }
  EXPECT_THROW(verify_strategy_proofness(inst, 1), InputError);
}

TEST(Resample, RelabelsAndKeepsLists) {
  const IndexedMarket base(three_by_two());
  const std::vector<std::uint32_t> picks{2, 2, 0};
  const auto r = base.resample(picks);
  ASSERT_EQ(r.num_students(), 3u);
  EXPECT_EQ(r.student_id(0), S(0));
  EXPECT_EQ(r.score(1), 8.0);
  EXPECT_EQ(r.list(2).size(), 2u);
  EXPECT_EQ(r.num_programs(), 2u);
}
