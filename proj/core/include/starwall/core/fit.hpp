#pragma once

#include <span>

#include "starwall/core/field.hpp"

namespace starwall::core {

struct ScaleFit {
  /// argmin_c || field - c * reference ||_2 over real c.
  double scale = 0.0;
  /// sup|field - scale * reference| / sup|reference|.
  double residual_sup = 0.0;
  /// residual_sup / |scale|: the misfit measured in units of the field itself,
  /// invariant under rescaling field. Infinite when scale == 0.
  double relative_residual = 0.0;
};

/// Throws GridError for mismatched grids, DegenerateReferenceError when
/// reference is identically zero.
ScaleFit fit_scale(const Field& field, const Field& reference);

/// Same fit on paired samples (e.g. scattered evaluation points).
ScaleFit fit_scale(std::span<const cplx> field, std::span<const cplx> reference);

}  // namespace starwall::core
