#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "admitsim/market/types.hpp"
#include "admitsim/synth/config.hpp"
#include "admitsim/synth/population.hpp"

namespace admitsim::synth {

using FeatureVector = std::array<double, kFeatureCount>;

/// Student-program features entering utility: score times program peer
/// quality over kPeerQualityScale, the program's share of the student's
/// gender, and parental income rank times the program's mean parental income
/// rank.
FeatureVector features(const StudentRecord& s, const market::ProgramRecord& p);

/// Distance in thousands of km; enters utility with coefficient -1.
double distance_offset(const StudentRecord& s, const market::ProgramRecord& p);

/// Utilities of every student (rows) for every program (columns), split into
/// the deterministic part and the Gumbel taste shock.
struct UtilityMatrix {
  Eigen::MatrixXd deterministic;
  Eigen::MatrixXd shock;

  std::size_t num_students() const { return static_cast<std::size_t>(deterministic.rows()); }
  std::size_t num_programs() const { return static_cast<std::size_t>(deterministic.cols()); }
  double total(std::size_t i, std::size_t j) const {
    return deterministic(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
           shock(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
};

/// U_ij = theta_j - d_ij + gamma . X_ij + eps_ij. With `with_shocks` false the
/// shock matrix is zero. Throws InputError when theta does not have one entry
/// per program.
UtilityMatrix realize_utilities(std::span<const StudentRecord> students,
                                std::span<const market::ProgramRecord> programs,
                                const std::array<double, kFeatureCount>& gamma, std::span<const double> theta,
                                std::uint64_t seed, bool with_shocks = true);

/// Program positions in descending order of total utility; equal utilities
/// keep program order.
std::vector<std::uint32_t> preference_order(const UtilityMatrix& u, std::size_t student);

}  // namespace admitsim::synth
