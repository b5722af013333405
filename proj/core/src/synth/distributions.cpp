#include "admitsim/synth/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/erf.hpp>
#include <fmt/format.h>

#include "admitsim/common.hpp"

namespace admitsim::synth {
namespace {

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

struct Moments {
  double mean;
  double sd;
};

Moments truncated_moments(double loc, double scale, double lo, double hi) {
  const double a = (lo - loc) / scale;
  const double b = (hi - loc) / scale;
  const double z = standard_normal_cdf(b) - standard_normal_cdf(a);
  const double pa = std::isfinite(a) ? normal_pdf(a) : 0.0;
  const double pb = std::isfinite(b) ? normal_pdf(b) : 0.0;
  const double apa = std::isfinite(a) ? a * pa : 0.0;
  const double bpb = std::isfinite(b) ? b * pb : 0.0;
  const double shift = (pa - pb) / z;
  const double var = scale * scale * (1.0 + (apa - bpb) / z - shift * shift);
  return {loc + scale * shift, std::sqrt(std::max(var, 0.0))};
}

}  // namespace

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double standard_normal_quantile(double u) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

TruncatedNormal::TruncatedNormal(double loc, double scale, double lo, double hi)
    : loc_(loc),
      scale_(scale),
      lo_(lo),
      hi_(hi),
      cdf_lo_(scale > 0 ? standard_normal_cdf((lo - loc) / scale) : 0.0),
      cdf_hi_(scale > 0 ? standard_normal_cdf((hi - loc) / scale) : 1.0) {}

TruncatedNormal TruncatedNormal::from_location_scale(double loc, double scale, double lo, double hi) {
  if (!(lo < hi) || scale < 0) throw ConfigError("", "truncated normal needs lo < hi and scale >= 0");
  return TruncatedNormal(loc, scale, lo, hi);
}

TruncatedNormal TruncatedNormal::from_moments(double mean, double sd, double lo, double hi) {
  if (!(lo < hi) && !(sd == 0 && lo == hi)) {
    throw ConfigError("", fmt::format("bounds [{}, {}] are empty", lo, hi));
  }
  if (sd < 0 || mean < lo || mean > hi) {
    throw ConfigError("", fmt::format("mean {} / sd {} not attainable on [{}, {}]", mean, sd, lo, hi));
  }
  if (sd == 0) return TruncatedNormal(mean, 0.0, lo, hi);

  double loc = mean;
  double scale = sd;
  for (int iter = 0; iter < 2000; ++iter) {
    const Moments m = truncated_moments(loc, scale, lo, hi);
    const double err_mean = mean - m.mean;
    const double ratio = sd / m.sd;
    if (std::abs(err_mean) < 1e-10 * std::max(1.0, std::abs(mean)) && std::abs(ratio - 1.0) < 1e-10) {
      return TruncatedNormal(loc, scale, lo, hi);
    }
    loc += err_mean;
    scale *= std::clamp(ratio, 0.5, 2.0);
    if (!std::isfinite(loc) || !std::isfinite(scale) || scale > 1e6 * sd) break;
  }
  throw ConfigError("", fmt::format("mean {} / sd {} not attainable by a normal truncated to [{}, {}]", mean, sd,
                                    lo, hi));
}

double TruncatedNormal::quantile(double u) const {
  if (scale_ == 0) return std::clamp(loc_, lo_, hi_);
  const double p = cdf_lo_ + u * (cdf_hi_ - cdf_lo_);
  const double x = loc_ + scale_ * standard_normal_quantile(std::clamp(p, 1e-300, 1.0 - 1e-16));
  return std::clamp(x, lo_, hi_);
}

double TruncatedNormal::mean() const {
  return scale_ == 0 ? loc_ : truncated_moments(loc_, scale_, lo_, hi_).mean;
}

double TruncatedNormal::sd() const { return scale_ == 0 ? 0.0 : truncated_moments(loc_, scale_, lo_, hi_).sd; }

MarginalSampler::MarginalSampler(const ContinuousMarginal& m)
    : spec_(m), dist_(TruncatedNormal::from_moments(m.mean, m.sd, m.lo, m.hi)) {}

double MarginalSampler::operator()(double u) const {
  const double x = dist_.quantile(u);
  return spec_.integer ? std::round(x) : x;
}

GaussianCopula::GaussianCopula(const Eigen::MatrixXd& correlation) {
  if (correlation.rows() != correlation.cols()) throw ConfigError("correlation", "matrix must be square");
  for (Eigen::Index i = 0; i < correlation.rows(); ++i) {
    if (std::abs(correlation(i, i) - 1.0) > 1e-12) throw ConfigError("correlation", "diagonal must be 1");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(correlation(i, j) - correlation(j, i)) > 1e-12) {
        throw ConfigError("correlation", "matrix must be symmetric");
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(correlation);
  if (llt.info() != Eigen::Success) throw ConfigError("correlation", "matrix is not positive definite");
  factor_ = llt.matrixL();
}

Eigen::VectorXd GaussianCopula::draw(Rng& rng) const {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(factor_.rows());
  for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = normal(rng);
  Eigen::VectorXd x = factor_ * z;
  for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = std::clamp(standard_normal_cdf(x(k)), 1e-15, 1.0 - 1e-15);
  return x;
}

}  // namespace admitsim::synth
