#include "starwall/analysis/free_family.hpp"

#include <cmath>

#include "starwall/core/errors.hpp"
#include "starwall/states/closed_forms.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

namespace starwall::analysis {

double envelope_sigma(double envelope_width) {
  if (!(envelope_width > 0.0)) throw ConfigError("envelope width must be positive");
  return 1.0 / (std::sqrt(2.0) * envelope_width);
}

std::vector<FreeCorrespondence> free_correspondence(const states::StateSpec& spec,
                                                    const std::vector<double>& envelope_widths,
                                                    const core::PhaseSpaceGrid& grid) {
  std::vector<FreeCorrespondence> out;
  for (double width : envelope_widths) {
    states::StateSpec smeared = spec;
    smeared.sigma_reg = envelope_sigma(width);
    const core::Field closed = states::rho_free_regularized(smeared, grid);
    states::WignerOptions options;
    options.window_half_width = 7.0 * width;
    options.panel_width = 1.0;
    const auto numeric =
        states::wigner_transform_numeric(states::gaussian_envelope_state(spec, width), grid, options);
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      diff = std::max(diff, std::abs(numeric.field.values()[i] - closed.values()[i]));
    }
    out.push_back({width, smeared.sigma_reg, diff / closed.sup_norm()});
  }
  return out;
}

}  // namespace starwall::analysis
