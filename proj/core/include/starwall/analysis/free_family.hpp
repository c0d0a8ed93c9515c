#pragma once

#include <vector>

#include "starwall/core/grid.hpp"
#include "starwall/states/state_spec.hpp"

namespace starwall::analysis {

struct FreeCorrespondence {
  double envelope_width = 0.0;
  /// Smearing width of the closed form, 1/(sqrt 2 Lambda).
  double sigma = 0.0;
  /// sup |numeric - closed| / sup |closed| on the grid.
  double relative_error = 0.0;
};

/// Smearing width that a Gaussian envelope exp(-x^2/(2 Lambda^2)) induces in p.
double envelope_sigma(double envelope_width);

/// Numerical Wigner transform of the Gaussian-envelope state against the
/// smeared closed form, per envelope width. The two differ by the factor
/// exp(-x^2/Lambda^2), so the grid should sit near x = 0.
std::vector<FreeCorrespondence> free_correspondence(const states::StateSpec& spec,
                                                    const std::vector<double>& envelope_widths,
                                                    const core::PhaseSpaceGrid& grid);

}  // namespace starwall::analysis
