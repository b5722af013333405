#include "admitsim/common.hpp"

#include <cmath>
#include <utility>

namespace admitsim {

double distance_km(const Point& a, const Point& b) {
  return std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
}

ConfigError::ConfigError(std::string where, const std::string& what)
    : std::runtime_error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}

}  // namespace admitsim
