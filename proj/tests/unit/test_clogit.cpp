#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "admitsim/econ/clogit.hpp"
#include "admitsim/rng.hpp"
#include "fixtures.hpp"

using namespace admitsim;
using namespace admitsim::econ;

namespace {

Eigen::VectorXd random_params(Rng& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd p(n);
  for (Eigen::Index k = 0; k < n; ++k) p(k) = normal(rng);
  return p;
}

}  // namespace

TEST(Clogit, AnalyticGradientMatchesFiniteDifferences) {
  Rng rng = make_rng(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto data = fixture::random_choices(seed, 60, 2 + seed % 6);
    const ClogitProblem problem(data);
    for (int point = 0; point < 3; ++point) {
      const auto params = random_params(rng, static_cast<Eigen::Index>(problem.dimension()));
      const auto analytic = problem.evaluate(params, false).gradient;
      const auto numeric = fixture::numeric_gradient(problem, params);
      EXPECT_LT((analytic - numeric).norm() / std::max(1.0, analytic.norm()), 1e-6) << "seed " << seed;
    }
  }
}

TEST(Clogit, AnalyticHessianMatchesFiniteDifferences) {
  Rng rng = make_rng(4);
  const auto data = fixture::random_choices(12, 80, 5);
  const ClogitProblem problem(data);
  for (int point = 0; point < 5; ++point) {
    const auto params = random_params(rng, static_cast<Eigen::Index>(problem.dimension()));
    const auto analytic = problem.evaluate(params, true).hessian;
    const auto numeric = fixture::numeric_hessian(problem, params);
    EXPECT_LT((analytic - numeric).norm() / std::max(1.0, analytic.norm()), 1e-6);
    EXPECT_LT((analytic - analytic.transpose()).norm(), 1e-12);
  }
}

TEST(Clogit, LogLikelihoodAtZeroIsMinusSumLogChoiceSetSize) {
  auto data = fixture::random_choices(5, 150, 6);
  data.distance.setZero();
  const ClogitProblem problem(data);
  std::set<std::uint32_t> chosen;
  for (std::size_t s = 0; s < data.num_students(); ++s) chosen.insert(problem.chosen_program(s));
  double expect = 0;
  for (std::size_t s = 0; s < data.num_students(); ++s) {
    std::size_t size = 0;
    for (std::size_t a = data.offsets[s]; a < data.offsets[s + 1]; ++a) size += chosen.contains(data.program[a]);
    expect -= std::log(static_cast<double>(size));
  }
  const auto zero = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(problem.dimension()));
  EXPECT_NEAR(problem.evaluate(zero, false).value, expect, 1e-9);
}

TEST(Clogit, ParameterisationDropsUnchosenPrograms) {
  auto data = fixture::random_choices(6, 40, 4);
  data.programs.push_back(ProgramId{99});
  const ClogitProblem problem(data);
  EXPECT_EQ(problem.unchosen_programs(), std::vector<ProgramId>{ProgramId{99}});
  EXPECT_EQ(problem.terms().size(), 3u + 3u);
  EXPECT_EQ(problem.terms()[0], "f0");
  EXPECT_THROW(problem.evaluate(Eigen::VectorXd::Zero(2)), InputError);
  EXPECT_THROW(ClogitProblem(ChoiceDataset{}), InputError);
}

TEST(Clogit, RecoversGeneratingCoefficients) {
  const Eigen::Vector3d gamma(1.0, -0.5, 0.25);
  const auto data = fixture::random_choices(8, 4000, 6, gamma);
  const auto fit = clogit_fit(data, {}, "sim");
  EXPECT_TRUE(fit.converged);
  EXPECT_EQ(fit.model_id, "sim");
  EXPECT_EQ(fit.n, 4000u);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_LT(std::abs(fit.coef(k) - gamma(k)), 3.5 * fit.se(k)) << k;
  for (Eigen::Index k = 3; k < fit.coef.size(); ++k) EXPECT_LT(std::abs(fit.coef(k)), 3.5 * fit.se(k)) << k;
  EXPECT_LT(fit.gradient_max_norm / 4000.0, 1e-8);
  ASSERT_TRUE(fit.cluster_se.has_value());
  EXPECT_EQ(fit.clusters, 6u);
  EXPECT_TRUE(fit.log_likelihood.has_value());
}

TEST(Clogit, IterationCapRaisesNumericalError) {
  const auto data = fixture::random_choices(9, 500, 5);
  ClogitOptions o;
  o.max_iterations = 1;
  EXPECT_THROW(clogit_fit(data, o), NumericalError);
}
