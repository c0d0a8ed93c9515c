#pragma once

#include <functional>
#include <string>
#include <vector>

#include "starwall/core/field.hpp"

namespace starwall::states {

enum class Support { whole_line, half_line };

struct WignerOptions {
  /// Integration limit Y: y is restricted to [-Y, Y].
  double window_half_width = 10.0;
  Support support = Support::whole_line;
  /// Composite Gauss-Legendre: panels of at most this width...
  double panel_width = 0.25;
  /// ...with this many nodes each.
  std::size_t nodes_per_panel = 24;
};

struct WignerResult {
  core::Field field;
  /// max |coarse - fine| between the rule and its panel-doubled version.
  double error_estimate = 0.0;
  std::vector<std::string> warnings;
};

/// rho(x, p) = (1/pi) integral dy exp(-2ipy) psi(x+y) conj(psi(x-y)) by
/// quadrature at every lattice point. Half-line states integrate over
/// y in (x, -x) and give exactly 0 for x >= 0. A half-line support wider than
/// the window produces a warning.
WignerResult wigner_transform_numeric(const std::function<cplx(double)>& psi,
                                      const core::PhaseSpaceGrid& grid,
                                      const WignerOptions& options = {});

/// Same integral on the y-lattice conjugate to the grid's p-axis (trapezoid
/// rule); exactly the inverse partial Fourier transform of the sampled kernel
/// psi(x+y) conj(psi(x-y)). Use when the kernel structure must survive
/// exactly, as in purity checks.
core::Field wigner_transform_grid(const std::function<cplx(double)>& psi,
                                  const core::PhaseSpaceGrid& grid);

}  // namespace starwall::states
