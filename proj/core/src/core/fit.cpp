#include "starwall/core/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "starwall/core/errors.hpp"

namespace starwall::core {

ScaleFit fit_scale(std::span<const cplx> field, std::span<const cplx> reference) {
  if (field.size() != reference.size()) throw GridError("fit_scale: sample counts differ");
  double cross = 0.0;
  double ref_norm = 0.0;
  double ref_sup = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    cross += (std::conj(reference[i]) * field[i]).real();
    ref_norm += std::norm(reference[i]);
    ref_sup = std::max(ref_sup, std::abs(reference[i]));
  }
  if (ref_norm == 0.0) throw DegenerateReferenceError("fit_scale: reference is identically zero");
  ScaleFit fit;
  fit.scale = cross / ref_norm;
  double worst = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    worst = std::max(worst, std::abs(field[i] - fit.scale * reference[i]));
  }
  fit.residual_sup = worst / ref_sup;
  fit.relative_residual = fit.scale == 0.0 ? std::numeric_limits<double>::infinity()
                                           : fit.residual_sup / std::abs(fit.scale);
  return fit;
}

ScaleFit fit_scale(const Field& field, const Field& reference) {
  if (!(field.grid() == reference.grid())) throw GridError("fit_scale: grids differ");
  return fit_scale(field.values(), reference.values());
}

}  // namespace starwall::core
