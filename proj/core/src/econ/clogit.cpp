#include "admitsim/econ/clogit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace admitsim::econ {
namespace {

double max_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

ClogitProblem::ClogitProblem(const ChoiceDataset& data)
    : data_(&data), features_(static_cast<std::size_t>(data.x.cols())) {
  if (data.num_students() == 0) throw InputError("conditional logit needs at least one choice");
  std::vector<bool> chosen(data.programs.size(), false);
  for (std::size_t s = 0; s < data.num_students(); ++s) chosen[chosen_program(s)] = true;

  terms_ = data.feature_names;
  theta_index_.assign(data.programs.size(), -1);
  bool have_reference = false;
  for (std::size_t j = 0; j < data.programs.size(); ++j) {
    if (!chosen[j]) {
      unchosen_.push_back(data.programs[j]);
    } else if (!have_reference) {
      reference_ = j;
      have_reference = true;
    } else {
      theta_index_[j] = static_cast<std::int32_t>(terms_.size());
      terms_.push_back(fmt::format("theta[{}]", data.programs[j].value));
    }
  }
}

std::uint32_t ClogitProblem::chosen_program(std::size_t s) const {
  return data_->program[data_->offsets[s] + data_->chosen[s]];
}

double ClogitProblem::accumulate(std::size_t s, const Eigen::VectorXd& params, Eigen::Ref<Eigen::VectorXd> gradient,
                                 Eigen::MatrixXd* hessian) const {
  const auto& d = *data_;
  const auto k = static_cast<Eigen::Index>(features_);
  const auto gamma = params.head(k);
  thread_local std::vector<double> v;
  thread_local std::vector<double> p;
  thread_local std::vector<std::size_t> alts;
  alts.clear();
  v.clear();
  for (std::size_t a = d.offsets[s]; a < d.offsets[s + 1]; ++a) {
    const std::uint32_t j = d.program[a];
    if (theta_index_[j] < 0 && j != reference_) continue;
    alts.push_back(a);
    const double theta = theta_index_[j] >= 0 ? params(theta_index_[j]) : 0.0;
    v.push_back(d.x.row(static_cast<Eigen::Index>(a)).dot(gamma) + theta - d.distance(static_cast<Eigen::Index>(a)));
  }
  const std::size_t chosen_alt = d.offsets[s] + d.chosen[s];
  double vmax = v.front();
  for (double x : v) vmax = std::max(vmax, x);
  double sum = 0;
  p.resize(v.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    p[a] = std::exp(v[a] - vmax);
    sum += p[a];
  }
  const double lse = vmax + std::log(sum);
  for (auto& q : p) q /= sum;

  double v_chosen = 0;
  Eigen::VectorXd xbar = Eigen::VectorXd::Zero(k);
  for (std::size_t a = 0; a < alts.size(); ++a) {
    if (alts[a] == chosen_alt) v_chosen = v[a];
    xbar += p[a] * d.x.row(static_cast<Eigen::Index>(alts[a])).transpose();
  }

  gradient.head(k) += d.x.row(static_cast<Eigen::Index>(chosen_alt)).transpose() - xbar;
  const std::int32_t tc = theta_index_[d.program[chosen_alt]];
  if (tc >= 0) gradient(tc) += 1.0;
  for (std::size_t a = 0; a < alts.size(); ++a) {
    const std::int32_t t = theta_index_[d.program[alts[a]]];
    if (t >= 0) gradient(t) -= p[a];
  }
  if (hessian == nullptr) return v_chosen - lse;

  // Minus the covariance of (x_j, e_theta(j)) under the choice probabilities.
  auto& h = *hessian;
  Eigen::MatrixXd xx = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t a = 0; a < alts.size(); ++a) {
    const Eigen::VectorXd xa = d.x.row(static_cast<Eigen::Index>(alts[a])).transpose();
    xx.noalias() += p[a] * xa * xa.transpose();
    const std::int32_t t = theta_index_[d.program[alts[a]]];
    if (t < 0) continue;
    const Eigen::VectorXd cross = p[a] * (xa - xbar);
    h.block(0, t, k, 1) -= cross;
    h.block(t, 0, 1, k) -= cross.transpose();
    h(t, t) -= p[a];
    for (std::size_t b = 0; b < alts.size(); ++b) {
      const std::int32_t u = theta_index_[d.program[alts[b]]];
      if (u >= 0) h(t, u) += p[a] * p[b];
    }
  }
  h.topLeftCorner(k, k) -= xx - xbar * xbar.transpose();
  return v_chosen - lse;
}

LogLikelihood ClogitProblem::evaluate(const Eigen::VectorXd& params, bool with_hessian) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (params.size() != dim) {
    throw InputError(fmt::format("expected {} parameters, got {}", dim, params.size()));
  }
  LogLikelihood out;
  out.gradient = Eigen::VectorXd::Zero(dim);
  if (with_hessian) out.hessian = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < data_->num_students(); ++s) {
    out.value += accumulate(s, params, out.gradient, with_hessian ? &out.hessian : nullptr);
  }
  return out;
}

Eigen::MatrixXd ClogitProblem::scores(const Eigen::VectorXd& params) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (params.size() != dim) {
    throw InputError(fmt::format("expected {} parameters, got {}", dim, params.size()));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(data_->num_students()), dim);
  Eigen::VectorXd g(dim);
  for (std::size_t s = 0; s < data_->num_students(); ++s) {
    g.setZero();
    accumulate(s, params, g, nullptr);
    out.row(static_cast<Eigen::Index>(s)) = g.transpose();
  }
  return out;
}

LogLikelihood clogit_loglik(const Eigen::VectorXd& params, const ClogitProblem& problem) {
  return problem.evaluate(params, true);
}

ModelFit clogit_fit(const ChoiceDataset& data, const ClogitOptions& options, const std::string& model_id) {
  const ClogitProblem problem(data);
  const auto dim = static_cast<Eigen::Index>(problem.dimension());
  Eigen::VectorXd params = Eigen::VectorXd::Zero(dim);
  LogLikelihood cur = problem.evaluate(params);

  const double scale = std::max<double>(1.0, static_cast<double>(data.num_students()));
  const auto small = [&](const LogLikelihood& l) { return max_norm(l.gradient) / scale < options.tolerance; };
  int iter = 0;
  bool converged = small(cur);
  while (!converged && iter < options.max_iterations) {
    ++iter;
    const Eigen::LDLT<Eigen::MatrixXd> info(-cur.hessian);
    if (info.info() != Eigen::Success || info.isNegative()) {
      throw NumericalError(fmt::format("information matrix not positive definite at iteration {} (gradient {:.3g})",
                                       iter, max_norm(cur.gradient)));
    }
    const Eigen::VectorXd step = info.solve(cur.gradient);
    // Near the optimum the predicted gain falls below the rounding error of
    // the summed log-likelihood, so equal-within-roundoff counts as progress.
    const double slack = 1e-12 * std::max(1.0, std::abs(cur.value));
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      const Eigen::VectorXd trial = params + t * step;
      LogLikelihood next = problem.evaluate(trial);
      if (std::isfinite(next.value) && next.value >= cur.value - slack) {
        params = trial;
        cur = std::move(next);
        improved = true;
        break;
      }
    }
    converged = small(cur);
    if (!improved) break;
  }
  if (!converged) {
    throw NumericalError(fmt::format("conditional logit did not converge after {} iterations (gradient max-norm {:.3g})",
                                     iter, max_norm(cur.gradient)));
  }

  const Eigen::LDLT<Eigen::MatrixXd> info(-cur.hessian);
  if (info.info() != Eigen::Success || info.isNegative()) {
    throw NumericalError("information matrix not positive definite at the optimum");
  }
  ModelFit fit;
  fit.model_id = model_id;
  fit.estimator = "clogit";
  fit.terms = problem.terms();
  fit.coef = params;
  fit.cov = info.solve(Eigen::MatrixXd::Identity(dim, dim));
  fit.cov = 0.5 * (fit.cov + fit.cov.transpose()).eval();
  fit.se = fit.cov.diagonal().cwiseMax(0.0).cwiseSqrt();
  fit.n = data.num_students();
  fit.log_likelihood = cur.value;
  fit.converged = true;
  fit.iterations = iter;
  fit.gradient_max_norm = max_norm(cur.gradient);
  fit.dropped = data.dropped;
  fit.reference_program = problem.reference();

  // Sandwich with scores summed within the chosen program.
  const Eigen::MatrixXd s = problem.scores(params);
  std::map<std::uint32_t, Eigen::VectorXd> sums;
  for (std::size_t i = 0; i < data.num_students(); ++i) {
    auto [it, fresh] = sums.try_emplace(problem.chosen_program(i), Eigen::VectorXd::Zero(dim));
    it->second += s.row(static_cast<Eigen::Index>(i)).transpose();
  }
  fit.clusters = sums.size();
  if (fit.clusters > 1) {
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& [g, v] : sums) meat.noalias() += v * v.transpose();
    const double g = static_cast<double>(fit.clusters);
    const Eigen::MatrixXd v = g / (g - 1.0) * fit.cov * meat * fit.cov;
    fit.cluster_se = v.diagonal().cwiseMax(0.0).cwiseSqrt();
  }
  return fit;
}

}  // namespace admitsim::econ
