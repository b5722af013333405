#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace admitsim {

/// Opaque identifier tagged by the entity it names, so student and program
/// ids cannot be mixed up at call sites.
template <class Tag>
struct Id {
  std::int64_t value{0};

  constexpr Id() = default;
  constexpr explicit Id(std::int64_t v) : value(v) {}

  friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using StudentId = Id<struct StudentTag>;
using ProgramId = Id<struct ProgramTag>;

/// Position on a planar kilometre grid.
struct Point {
  double x_km{0.0};
  double y_km{0.0};

  friend constexpr bool operator==(const Point&, const Point&) = default;
};

double distance_km(const Point& a, const Point& b);

/// Malformed or inconsistent input data (unknown ids, duplicates, bad ranges).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration; `where` carries a key name or "file:line" locator.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what);
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// An optimizer or factorization failed to produce a usable answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace admitsim

template <class Tag>
struct std::hash<admitsim::Id<Tag>> {
  std::size_t operator()(const admitsim::Id<Tag>& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};
