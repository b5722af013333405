#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "admitsim/econ/choice_data.hpp"
#include "admitsim/econ/clogit.hpp"

namespace fixture {

/// Random long-format choice data: every student faces between 2 and
/// `n_programs` distinct programs with three normal features, and picks one
/// by simulating the logit at `gamma` (theta zero).
admitsim::econ::ChoiceDataset random_choices(std::uint64_t seed, std::size_t n_students, std::size_t n_programs,
                                             const Eigen::Vector3d& gamma = Eigen::Vector3d(1.0, -0.5, 0.25));

/// Central-difference gradient of the log-likelihood with step h * max(1, |p_k|).
Eigen::VectorXd numeric_gradient(const admitsim::econ::ClogitProblem& problem, const Eigen::VectorXd& params,
                                 double h = 1e-5);

/// Central-difference Hessian built from analytic gradients.
Eigen::MatrixXd numeric_hessian(const admitsim::econ::ClogitProblem& problem, const Eigen::VectorXd& params,
                                double h = 1e-5);

}  // namespace fixture
