#include "fixtures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "admitsim/rng.hpp"

namespace fixture {

using namespace admitsim;

econ::ChoiceDataset random_choices(std::uint64_t seed, std::size_t n_students, std::size_t n_programs,
                                   const Eigen::Vector3d& gamma) {
  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> size(2, n_programs);

  econ::ChoiceDataset d;
  for (std::size_t j = 0; j < n_programs; ++j) d.programs.push_back(ProgramId{static_cast<std::int64_t>(j + 1)});
  d.feature_names = {"f0", "f1", "f2"};
  std::vector<std::array<double, 4>> rows;  // three features and distance
  std::vector<std::uint32_t> order(n_programs);
  for (std::size_t s = 0; s < n_students; ++s) {
    d.students.push_back(StudentId{static_cast<std::int64_t>(s + 1)});
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    const std::size_t k = size(rng);
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<double> v(k);
    for (std::size_t a = 0; a < k; ++a) {
      const std::array<double, 4> row{normal(rng), normal(rng), normal(rng), 0.4 * unit(rng)};
      rows.push_back(row);
      d.program.push_back(order[a]);
      v[a] = gamma(0) * row[0] + gamma(1) * row[1] + gamma(2) * row[2] - row[3] + draw_gumbel(rng);
    }
    d.chosen.push_back(static_cast<std::uint32_t>(std::max_element(v.begin(), v.end()) - v.begin()));
    d.offsets.push_back(d.program.size());
  }
  d.x.resize(static_cast<Eigen::Index>(rows.size()), 3);
  d.distance.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    d.x.row(i) << rows[r][0], rows[r][1], rows[r][2];
    d.distance(i) = rows[r][3];
  }
  return d;
}

Eigen::VectorXd numeric_gradient(const econ::ClogitProblem& problem, const Eigen::VectorXd& params, double h) {
  Eigen::VectorXd g(params.size());
  for (Eigen::Index k = 0; k < params.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(params(k)));
    Eigen::VectorXd up = params, down = params;
    up(k) += step;
    down(k) -= step;
    g(k) = (problem.evaluate(up, false).value - problem.evaluate(down, false).value) / (2 * step);
  }
  return g;
}

Eigen::MatrixXd numeric_hessian(const econ::ClogitProblem& problem, const Eigen::VectorXd& params, double h) {
  const auto n = params.size();
  Eigen::MatrixXd hess(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double step = h * std::max(1.0, std::abs(params(k)));
    Eigen::VectorXd up = params, down = params;
    up(k) += step;
    down(k) -= step;
    hess.col(k) = (problem.evaluate(up, false).gradient - problem.evaluate(down, false).gradient) / (2 * step);
  }
  return hess;
}

}  // namespace fixture
