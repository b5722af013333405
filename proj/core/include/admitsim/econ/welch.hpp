#pragma once

#include <span>

namespace admitsim::econ {

struct WelchResult {
  double statistic{0.0};
  double dof{0.0};
  double p_value{1.0};
};

/// Two-sided unequal-variance t-test of mean(a) = mean(b). When both samples
/// have zero variance the statistic is 0 with p = 1 for equal means and
/// +/-infinity with p = 0 otherwise. Throws InputError when either sample
/// has fewer than two values.
WelchResult welch_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace admitsim::econ
