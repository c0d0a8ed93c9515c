#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starwall/core/field.hpp"

namespace starwall::star {

struct ResidualPoint {
  double x = 0.0;
  double p = 0.0;
  cplx value{};
  /// Which equation line the value belongs to; empty for single-line checks.
  std::string component;
};

/// Evaluated left-hand side of a dynamical equation with norms and a verdict.
struct ResidualReport {
  std::string equation_id;
  /// Full residual on a grid (grid-based checks only).
  std::optional<core::Field> residual_field;
  /// Sample-point residuals, or the largest grid residuals.
  std::vector<ResidualPoint> points;
  double sup_norm = 0.0;
  double l2_norm = 0.0;
  /// Sup-norm of the tested rho over the same points.
  double reference_scale = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> warnings;

  /// sup_norm / reference_scale; 0 when both vanish.
  double ratio() const;

  /// {equation_id, sup_norm, l2_norm, reference_scale, tolerance, verdict,
  ///  points: [{x, p, re, im}], diagnostics, warnings}.
  nlohmann::json to_json() const;
};

/// Sets sup/l2 norms from `points`, then ratio and verdict.
void finalize_from_points(ResidualReport& report);

/// Keeps the `count` largest |value| entries of a residual field as points
/// (ties broken by lattice order).
std::vector<ResidualPoint> largest_points(const core::Field& field, std::size_t count,
                                          const std::string& component = {});

/// Sorted, de-duplicated concatenation.
void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from);

}  // namespace starwall::star
