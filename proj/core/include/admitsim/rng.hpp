#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace admitsim {

using Rng = std::mt19937_64;

/// Derives an independent child seed from a parent seed and a stage label.
/// Every random stream in the toolkit is reached by a chain of these calls
/// starting from the single experiment seed.
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

/// Standard Gumbel draw by inversion.
double draw_gumbel(Rng& rng);

/// Uniform on the open interval (0, 1).
double draw_open_unit(Rng& rng);

}  // namespace admitsim
