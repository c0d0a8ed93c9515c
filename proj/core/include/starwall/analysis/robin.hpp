#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "starwall/core/grid.hpp"
#include "starwall/star/report.hpp"

namespace starwall::analysis {

struct RobinEntry {
  double L = 0.0;
  /// atan(-L k).
  double phase = 0.0;
  /// sup |quadrature - closed form| / sup |closed form| on the grid.
  double closed_form_defect = 0.0;
  /// sup |rho_L| on the grid.
  double field_scale = 0.0;
  /// max_p |rho_L(0-, p)|; the y-interval (x, -x) closes at x = 0, so this is 0 for every L.
  double boundary_value_max = 0.0;
  /// d rho_L / dx at 0-, the same for every p: -(2/pi) sin^2(phase).
  std::vector<double> boundary_slope;
  /// One-sided difference -rho_L(-h, p)/h of the quadrature, h = 1e-5.
  std::vector<double> boundary_slope_numeric;
  /// sup over x < 0 of |d rho_L / dx|, for judging the slope.
  double slope_scale = 0.0;
  /// sup |rho_L - rho_wall| / scale; only meaningful for L = 0.
  double wall_defect = 0.0;
  star::ResidualReport fourth_order;
};

struct RobinReport {
  double k = 1.0;
  std::vector<RobinEntry> entries;
  std::vector<double> p_values;

  nlohmann::json to_json() const;
  /// L,p,boundary_value,boundary_slope,boundary_slope_numeric
  void write_csv(std::ostream& out) const;
};

/// x in [-4, 0] (81 points), p in [-4, 4] (81 points).
core::PhaseSpaceGrid default_robin_grid();

/// Wigner functions of theta(-x) sin(kx + phase), phase = atan(-L k), by
/// quadrature; closed-form comparison, boundary profile and the fourth-order
/// bulk residual (analytic derivatives, x < 0) for each L.
RobinReport robin_scan(const std::vector<double>& L_values, double k,
                       const core::PhaseSpaceGrid& grid = default_robin_grid());

}  // namespace starwall::analysis
