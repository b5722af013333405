#include "admitsim/econ/welch.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "admitsim/common.hpp"

namespace admitsim::econ {
namespace {

struct Summary {
  double n;
  double mean;
  double var;
};

Summary summarize(std::span<const double> v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {static_cast<double>(v.size()), mean, ss / static_cast<double>(v.size() - 1)};
}

}  // namespace

WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw InputError("Welch's t-test needs at least two values per sample");
  const Summary sa = summarize(a);
  const Summary sb = summarize(b);
  const double va = sa.var / sa.n;
  const double vb = sb.var / sb.n;
  const double diff = sa.mean - sb.mean;

  WelchResult r;
  if (va + vb == 0) {
    if (diff == 0) return r;
    r.statistic = std::copysign(std::numeric_limits<double>::infinity(), diff);
    r.dof = sa.n + sb.n - 2;
    r.p_value = 0.0;
    return r;
  }
  r.statistic = diff / std::sqrt(va + vb);
  r.dof = (va + vb) * (va + vb) / (va * va / (sa.n - 1) + vb * vb / (sb.n - 1));
  const boost::math::students_t dist(r.dof);
  r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.statistic)));
  return r;
}

}  // namespace admitsim::econ
