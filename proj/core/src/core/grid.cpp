#include "starwall/core/grid.hpp"

#include <cmath>
#include <string>

#include "starwall/core/errors.hpp"

namespace starwall::core {

Axis::Axis(double min, double max, std::size_t n) : min_(min), max_(max), n_(n) {
  if (!std::isfinite(min) || !std::isfinite(max)) {
    throw ConfigError("axis bounds must be finite");
  }
  if (!(min < max)) {
    throw ConfigError("axis bounds must satisfy min < max (got " + std::to_string(min) + ", " +
                      std::to_string(max) + ")");
  }
  if (n < 2) {
    throw ConfigError("axis needs at least 2 points");
  }
  step_ = (max - min) / static_cast<double>(n - 1);
}

PhaseSpaceGrid make_grid(double x_min, double x_max, std::size_t n_x,
                         double p_min, double p_max, std::size_t n_p) {
  return PhaseSpaceGrid(Axis(x_min, x_max, n_x), Axis(p_min, p_max, n_p));
}

PhaseSpaceGrid default_grid() { return make_grid(-6.0, 1.0, 512, -6.0, 6.0, 512); }

}  // namespace starwall::core
