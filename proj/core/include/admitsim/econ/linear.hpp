#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/common.hpp"
#include "admitsim/econ/model_fit.hpp"

namespace admitsim::econ {

/// Response, named regressors and optional weights of one linear model.
struct DesignMatrix {
  std::string model_id;
  std::string outcome;
  Eigen::VectorXd y;
  Eigen::MatrixXd x;
  std::vector<std::string> columns;
  std::optional<Eigen::VectorXd> weights;
  /// Student behind each row.
  std::vector<StudentId> rows;
};

/// The design's columns are linearly dependent.
class RankDeficientError : public NumericalError {
 public:
  RankDeficientError(std::vector<std::string> columns, const std::string& what)
      : NumericalError(what), columns_(std::move(columns)) {}
  const std::vector<std::string>& columns() const { return columns_; }

 private:
  std::vector<std::string> columns_;
};

/// Least squares with HC1 covariance. Ignores any weights on the design.
/// Throws RankDeficientError naming the redundant columns, InputError on
/// shape mismatches or fewer rows than columns.
ModelFit ols_fit(const DesignMatrix& design);

/// Weighted least squares with weight-adapted HC1 covariance. Throws
/// InputError when weights are missing or not all positive.
ModelFit wls_fit(const DesignMatrix& design);

}  // namespace admitsim::econ
