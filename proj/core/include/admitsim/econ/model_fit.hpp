#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/common.hpp"

namespace admitsim::econ {

/// Estimates of one model. `cov` is the estimator's primary covariance
/// (HC1 for least squares, inverse observed information for the logit) and
/// `se` its square-rooted diagonal.
struct ModelFit {
  std::string model_id;
  std::string estimator;
  std::vector<std::string> terms;
  Eigen::VectorXd coef;
  Eigen::MatrixXd cov;
  Eigen::VectorXd se;
  std::size_t n{0};
  std::optional<double> r_squared;
  std::optional<double> log_likelihood;

  /// Program-clustered standard errors (conditional logit only).
  std::optional<Eigen::VectorXd> cluster_se;
  std::size_t clusters{0};
  /// Program whose fixed effect is normalised to zero (conditional logit).
  std::optional<ProgramId> reference_program;

  bool converged{true};
  int iterations{0};
  double gradient_max_norm{0.0};
  /// Observations removed before fitting (e.g. infeasible stated choices).
  std::size_t dropped{0};

  /// Position of a term; throws std::out_of_range when absent.
  std::size_t index(const std::string& term) const;
  double estimate(const std::string& term) const { return coef(static_cast<Eigen::Index>(index(term))); }
  double std_error(const std::string& term) const { return se(static_cast<Eigen::Index>(index(term))); }
  double z(const std::string& term) const { return estimate(term) / std_error(term); }
};

}  // namespace admitsim::econ
