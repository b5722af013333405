#include "admitsim/econ/linear.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace admitsim::econ {
namespace {

ModelFit weighted_fit(const DesignMatrix& d, const Eigen::VectorXd& w, const char* estimator) {
  const Eigen::Index n = d.x.rows();
  const Eigen::Index k = d.x.cols();
  if (d.y.size() != n || w.size() != n || static_cast<Eigen::Index>(d.columns.size()) != k) {
    throw InputError(fmt::format("design '{}' has inconsistent dimensions", d.model_id));
  }
  if (n <= k) throw InputError(fmt::format("design '{}' has {} rows for {} columns", d.model_id, n, k));

  const Eigen::VectorXd root = w.cwiseSqrt();
  const Eigen::MatrixXd xw = root.asDiagonal() * d.x;
  const Eigen::VectorXd yw = root.cwiseProduct(d.y);

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xw);
  if (qr.rank() < k) {
    std::vector<std::string> redundant;
    for (Eigen::Index c = qr.rank(); c < k; ++c) {
      redundant.push_back(d.columns[static_cast<std::size_t>(qr.colsPermutation().indices()(c))]);
    }
    throw RankDeficientError(redundant, fmt::format("design '{}' is rank deficient; redundant columns: {}",
                                                    d.model_id, fmt::join(redundant, ", ")));
  }

  ModelFit fit;
  fit.model_id = d.model_id;
  fit.estimator = estimator;
  fit.terms = d.columns;
  fit.n = static_cast<std::size_t>(n);
  fit.coef = qr.solve(yw);

  // (X'WX)^{-1} = P R^{-1} R^{-T} P' from the pivoted factorization.
  const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
  const Eigen::MatrixXd bread_permuted = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  const Eigen::MatrixXd bread = perm * bread_permuted * perm.transpose();

  const Eigen::VectorXd resid_w = yw - xw * fit.coef;
  const Eigen::MatrixXd scaled = resid_w.asDiagonal() * xw;
  const Eigen::MatrixXd meat = scaled.transpose() * scaled;
  const double dof = static_cast<double>(n) / static_cast<double>(n - k);
  fit.cov = dof * bread * meat * bread;
  fit.cov = 0.5 * (fit.cov + fit.cov.transpose()).eval();
  fit.se = fit.cov.diagonal().cwiseMax(0.0).cwiseSqrt();

  const double wsum = w.sum();
  const double ybar = w.dot(d.y) / wsum;
  const double sst = (w.array() * (d.y.array() - ybar).square()).sum();
  const double ssr = resid_w.squaredNorm();
  fit.r_squared = sst > 0 ? 1.0 - ssr / sst : 1.0;
  return fit;
}

}  // namespace

std::size_t ModelFit::index(const std::string& term) const {
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (terms[k] == term) return k;
  }
  throw std::out_of_range(fmt::format("model '{}' has no term '{}'", model_id, term));
}

ModelFit ols_fit(const DesignMatrix& design) {
  return weighted_fit(design, Eigen::VectorXd::Ones(design.x.rows()), "ols");
}

ModelFit wls_fit(const DesignMatrix& design) {
  if (!design.weights) throw InputError(fmt::format("design '{}' has no weights", design.model_id));
  const Eigen::VectorXd& w = *design.weights;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w(i) > 0)) throw InputError(fmt::format("weight {} at row {} is not positive", w(i), i));
  }
  return weighted_fit(design, w, "wls");
}

}  // namespace admitsim::econ
