#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "admitsim/market/types.hpp"

namespace admitsim::synth {

struct KinkOptions {
  std::size_t n_bins{33};
  /// Curve covers score - prior cutoff in [-half_width, half_width].
  double half_width{4.0};
  /// Only programs whose prior cutoff exceeds this enter the curve.
  double min_prior_cutoff{9.0};
  /// Net out each program's mean application rate within the window, so the
  /// curve reflects variation in the distance rather than in which programs
  /// populate each bin.
  bool within_program{true};
};

struct KinkBin {
  double lo{0.0};
  double hi{0.0};
  std::size_t pairs{0};
  std::size_t applications{0};
  /// Share of student-program pairs in the bin where the student applied;
  /// empty bins have no rate.
  std::optional<double> raw_rate;
  /// The series the diagnostic uses: the raw rate, or with `within_program`
  /// the bin mean of application minus program mean, plus the overall mean.
  std::optional<double> rate;

  double center() const { return 0.5 * (lo + hi); }
};

struct KinkCurve {
  std::vector<KinkBin> bins;

  /// Index of the bin containing `x`, or nullopt outside the curve.
  std::optional<std::size_t> bin_of(double x) const;
};

/// Application rate as a function of the distance between a student's score
/// and a program's prior-year cutoff, over every (student, selective program)
/// pair. `prior_cutoffs` is aligned with market.programs. Throws InputError
/// for fewer than 5 bins or a misaligned cutoff table.
KinkCurve application_kink_curve(const market::Market& market, std::span<const market::CutoffValue> prior_cutoffs,
                                 const KinkOptions& options = {});

struct KinkDiagnostic {
  /// Right slope minus left slope at each bin, from count-weighted linear
  /// fits over `bandwidth` bins on each side. Missing near the edges or where
  /// a side has too few populated bins.
  std::vector<std::optional<double>> slope_change;
  /// Slope change over its standard error, treating bin rates as binomial.
  std::vector<std::optional<double>> slope_change_z;
  /// Bin with the largest standardized slope change.
  std::optional<std::size_t> max_bin;
  std::size_t zero_bin{0};
  /// Share of evaluable bins whose standardized |slope change| is at least
  /// that of the zero bin: a placebo test over kink locations.
  double placebo_p{1.0};

  bool max_at_zero() const { return max_bin && *max_bin == zero_bin; }
};

KinkDiagnostic diagnose_kink(const KinkCurve& curve, std::size_t bandwidth = 3);

}  // namespace admitsim::synth
