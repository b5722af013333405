#pragma once

#include <vector>

#include <Eigen/Dense>

#include "admitsim/rng.hpp"

namespace admitsim::synth {

/// Marginal of a bounded continuous covariate, stated by the mean and standard
/// deviation of the bounded variable itself (the way summary tables report
/// them). `integer` rounds draws to whole numbers, for 0-10 survey scales.
struct ContinuousMarginal {
  double mean{0.0};
  double sd{1.0};
  double lo{-1e300};
  double hi{1e300};
  bool integer{false};
};

/// Normal distribution truncated to [lo, hi]. Built from target moments of the
/// truncated variable; the underlying location and scale are solved for.
class TruncatedNormal {
 public:
  /// Throws ConfigError when the moments are not attainable on [lo, hi].
  static TruncatedNormal from_moments(double mean, double sd, double lo, double hi);
  static TruncatedNormal from_location_scale(double loc, double scale, double lo, double hi);

  double quantile(double u) const;
  double mean() const;
  double sd() const;

  double location() const { return loc_; }
  double scale() const { return scale_; }

 private:
  TruncatedNormal(double loc, double scale, double lo, double hi);

  double loc_;
  double scale_;
  double lo_;
  double hi_;
  double cdf_lo_;
  double cdf_hi_;
};

/// Maps a uniform draw onto a marginal.
class MarginalSampler {
 public:
  explicit MarginalSampler(const ContinuousMarginal& m);
  double operator()(double u) const;

 private:
  ContinuousMarginal spec_;
  TruncatedNormal dist_;
};

/// Gaussian copula over k coordinates with the given correlation matrix.
class GaussianCopula {
 public:
  /// Throws ConfigError unless `correlation` is a symmetric positive-definite
  /// matrix with unit diagonal.
  explicit GaussianCopula(const Eigen::MatrixXd& correlation);

  /// One vector of dependent uniforms on (0, 1).
  Eigen::VectorXd draw(Rng& rng) const;
  std::size_t dimension() const { return static_cast<std::size_t>(factor_.rows()); }

 private:
  Eigen::MatrixXd factor_;
};

double standard_normal_cdf(double x);
double standard_normal_quantile(double u);
double logistic(double x);
double logit(double p);

}  // namespace admitsim::synth
