#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/econ/choice_data.hpp"
#include "admitsim/econ/model_fit.hpp"

namespace admitsim::econ {

struct LogLikelihood {
  double value{0.0};
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;  // empty unless requested
};

/// Conditional logit with utility gamma . x_ij + theta_j - distance_ij.
/// Parameters are gamma followed by theta for every chosen program except the
/// reference (the first chosen program, normalised to zero). Programs that no
/// student chose have no finite estimate and are removed from choice sets.
class ClogitProblem {
 public:
  /// Keeps a reference to `data`. Throws InputError on an empty dataset.
  explicit ClogitProblem(const ChoiceDataset& data);

  std::size_t dimension() const { return terms_.size(); }
  const std::vector<std::string>& terms() const { return terms_; }
  ProgramId reference() const { return data_->programs[reference_]; }
  const std::vector<ProgramId>& unchosen_programs() const { return unchosen_; }

  /// Log-likelihood, analytic gradient and (optionally) Hessian. Log-sum-exp
  /// is evaluated with max subtraction.
  LogLikelihood evaluate(const Eigen::VectorXd& params, bool with_hessian = true) const;

  /// Per-student gradient contributions (students x parameters).
  Eigen::MatrixXd scores(const Eigen::VectorXd& params) const;

  /// Program position each student chose, used as the cluster key.
  std::uint32_t chosen_program(std::size_t student) const;

 private:
  // Adds student s's gradient (and Hessian) terms; returns her log-likelihood.
  double accumulate(std::size_t s, const Eigen::VectorXd& params, Eigen::Ref<Eigen::VectorXd> gradient,
                    Eigen::MatrixXd* hessian) const;

  const ChoiceDataset* data_;
  std::size_t features_;
  std::vector<std::int32_t> theta_index_;  // per program position; -1 for reference or unchosen
  std::size_t reference_{0};
  std::vector<ProgramId> unchosen_;
  std::vector<std::string> terms_;
};

LogLikelihood clogit_loglik(const Eigen::VectorXd& params, const ClogitProblem& problem);

struct ClogitOptions {
  double tolerance{1e-8};  // on the max-norm of the mean score (gradient / n)
  int max_iterations{200};
};

/// Damped Newton maximisation with step halving from zero. Covariance is the
/// inverse observed information; program-clustered standard errors (cluster =
/// chosen program) are reported alongside. Throws NumericalError with the
/// gradient norm when the iteration cap is hit or the information matrix is
/// singular.
ModelFit clogit_fit(const ChoiceDataset& data, const ClogitOptions& options = {}, const std::string& model_id = "");

}  // namespace admitsim::econ
