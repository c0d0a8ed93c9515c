#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "starwall/core/field.hpp"
#include "starwall/star/operands.hpp"
#include "starwall/star/report.hpp"
#include "starwall/states/liouville.hpp"

namespace starwall::star {

struct SamplePoint {
  double x = 0.0;
  double p = 0.0;
};

/// n points jittered inside a ceil(sqrt(n)) x ceil(sqrt(n)) stratification of
/// the rectangle, drawn from a seeded mt19937_64 (same seed, same points).
/// Momenta within `p_gap` of any value in `avoid_p` are redrawn.
std::vector<SamplePoint> stratified_sample(double x_min, double x_max, double p_min, double p_max,
                                           std::size_t n, std::uint64_t seed,
                                           std::span<const double> avoid_p = {},
                                           double p_gap = 0.1);

/// Default Liouville sample: x in [-2, 0.5], p in [-2, 2], avoiding p = 0, +-k.
std::vector<SamplePoint> liouville_sample(double k, std::size_t n = 25, std::uint64_t seed = 20240611);

/// (p^2 - i p d_x - d_x^2/4 - k^2) rho on the grid, spectral x-derivatives.
/// Diagnostic `imaginary_part_defect`: sup |Im R' + p d_x rho| / scale, with R'
/// computed along the Bopp-shift route.
ResidualReport genvalue_residual_free(const core::Field& rho, double k, double tolerance = 1e-6);

/// Both lines of the Liouville genvalue equation, multiplied through by e^{2 alpha x}:
///   d_x rho + (i/2p) e^{2 alpha x} [rho(p + i alpha) - rho(p - i alpha)]          ("imaginary")
///   (p^2 - k^2 - d_x^2/4) rho + (e^{2 alpha x}/2) [rho(p + i alpha) + rho(p - i alpha)]  ("real")
/// Throws ExcludedSampleError for p = 0.
ResidualReport genvalue_residual_liouville(const states::LiouvilleEvaluator& evaluator,
                                           std::span<const SamplePoint> points,
                                           double tolerance = 1e-6);

enum class DifferenceVariant {
  /// Odd-shift coefficient +i alpha e^{2 alpha x}/(4p), which follows from the genvalue pair.
  derived,
  /// Odd-shift coefficient -i e^{2 alpha x}/(4p).
  as_printed,
};

/// (p^2 - k^2) rho + (1/p)(e^{2ax}/4)^2 [(rho(p+2ia) - rho)/(p+ia) + (rho(p-2ia) - rho)/(p-ia)]
///   + c e^{2ax}/(4p) [rho(p+ia) - rho(p-ia)] + (e^{2ax}/2)[rho(p+ia) + rho(p-ia)].
/// Throws ExcludedSampleError for p = 0 or p = +-i alpha.
ResidualReport difference_eq_residual(const states::LiouvilleEvaluator& evaluator,
                                      std::span<const SamplePoint> points,
                                      DifferenceVariant variant = DifferenceVariant::derived,
                                      double tolerance = 1e-6);

enum class QuarticCoefficient {
  /// (p^2 - k^2)^2
  expanded,
  /// p^4 - 2 k^2 p + k^4
  as_printed,
};

struct FourthOrderOptions {
  QuarticCoefficient coefficient = QuarticCoefficient::expanded;
  double tolerance = 1e-8;
};

/// d_x^4 rho/16 + (p^2 + k^2) d_x^2 rho/2 + c0(p) rho on the lattice points with x < 0.
/// Grid fields use spectral derivatives; analytic operands are sampled on `grid`
/// with exact derivatives. Points with x >= 0 hold zero and do not enter the norms.
ResidualReport fourth_order_residual(const core::Field& rho, double k,
                                     const FourthOrderOptions& options = {});
ResidualReport fourth_order_residual(const AnalyticOperand& rho, double k,
                                     const core::PhaseSpaceGrid& grid,
                                     const FourthOrderOptions& options = {});
ResidualReport fourth_order_residual(const StarOperand& rho, double k,
                                     const core::PhaseSpaceGrid& grid,
                                     const FourthOrderOptions& options = {});

struct LrStarOptions {
  /// Cutoff window; defaults to [x_min of the grid, -0.2].
  std::optional<double> cutoff_min;
  std::optional<double> cutoff_max;
  double taper_fraction = 0.1;
  double tolerance = 1e-5;
};

/// (p^2 - E) * rho_w * (p^2 - E) for rho_w = rho times the x-cutoff. Norms and
/// verdict are taken over the interior where the cutoff is exactly 1.
/// Diagnostics: interior_min, interior_max, edge_decay.
ResidualReport lr_star_residual(const core::Field& rho, double energy,
                                const LrStarOptions& options = {});

/// Interior [lo, hi] of the cutoff window used by lr_star_residual.
std::pair<double, double> lr_star_interior(const core::PhaseSpaceGrid& grid,
                                           const LrStarOptions& options = {});

enum class ShiftBranch { complex_shift, real_shift };

std::string_view to_string(ShiftBranch branch);
ShiftBranch shift_branch_from_string(std::string_view name);

/// Coordinate shift x' - x. complex_shift: (-ln k^2 + i pi)/(2 alpha), which
/// makes k^2 e^{2 alpha Delta} = -1; real_shift: -ln(k^2)/(2 alpha).
cplx effective_mass_shift(double alpha, double k, ShiftBranch branch);

/// rho'(x', p) := rho_alpha(x' - Delta, p) and
///   R30 = (p - i d_x'/2)^2 rho' - k^2 rho' - k^2 e^{2 alpha x'} rho'(x', p + i alpha)
/// at the sample points (read as x'). Diagnostics: identity_defect
/// (sup |R30 - R31| / scale, R31 the left genvalue residual at x = x' - Delta),
/// shift_re, shift_im, shift_abs.
ResidualReport effective_mass_residual(const states::LiouvilleEvaluator& evaluator,
                                       ShiftBranch branch, std::span<const SamplePoint> points,
                                       double tolerance = 1e-6);

}  // namespace starwall::star
