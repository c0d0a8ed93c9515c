#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "starwall/core/field.hpp"
#include "starwall/core/transforms.hpp"

namespace starwall::analysis {

struct PurityReport {
  /// Descending.
  std::vector<double> singular_values;
  /// s2 / s1, in [0, 1]; 0 for a rank-1 kernel.
  double purity_metric = 0.0;
  core::MatrixWindow window;
  /// Hermiticity defect of the position kernel.
  double kernel_hermiticity = 0.0;

  nlohmann::json to_json(std::size_t max_singular_values = 8) const;
};

/// Position kernel K(a, b) = W((a+b)/2, (a-b)/2) of rho on a ∈ [a_min, a_max]
/// and its singular values. Throws WindowError when the window holds fewer
/// than two points or leaves the kernel lattice.
PurityReport purity_check(const core::Field& rho, double a_min, double a_max,
                          core::Interpolation order = core::Interpolation::bicubic);

struct InterferenceScan {
  std::vector<double> moduli;
  std::vector<double> metrics;
  std::size_t argmin = 0;
  /// sqrt(a_plus a_minus), where the family is a pure state.
  double pure_modulus = 0.0;
};

/// Lattice for the interference scan: dp = k / 20 puts p = 0, +-k on nodes,
/// x-step = y-step = pi / (512 dp), 129 x-points centred on 0, 512 momenta.
core::PhaseSpaceGrid interference_grid(double k);

/// Purity metric of the smeared free family
///   a_plus d(p-k) + a_minus d(p+k) + 2|b| d(p) cos(2kx + phase)
/// for each |b| in `moduli`, on the given grid and kernel window.
InterferenceScan interference_scan(double a_plus, double a_minus, double k, double phase,
                                   double sigma, const std::vector<double>& moduli,
                                   const core::PhaseSpaceGrid& grid, double a_min, double a_max);

}  // namespace starwall::analysis
