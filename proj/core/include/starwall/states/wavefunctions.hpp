#pragma once

#include <functional>

#include "starwall/core/conventions.hpp"
#include "starwall/states/state_spec.hpp"

namespace starwall::states {

/// theta(-x) sin(kx); exactly 0 for x >= 0.
double psi_wall(double k, double x);

/// Phase phi = atan(-L k) of the Robin state sin(kx + phi).
double robin_phase(double k, double L);

/// theta(-x) sin(kx + phi), phi = atan(-L k), so psi(0-) + L psi'(0-) = 0.
double psi_robin(double k, double L, double x);

struct LiouvilleSample {
  double value = 0.0;
  bool underflow = false;
};

/// K_{ik/alpha}(exp(alpha x) / alpha), unnormalised: the energy-k^2
/// eigenfunction of p^2 + exp(2 alpha x). Returns 0 with underflow set once
/// the Bessel argument passes 745.
LiouvilleSample psi_liouville_checked(double alpha, double k, double x);
double psi_liouville(double alpha, double k, double x);

/// psi_liouville through a quintic B-spline on [x_lo, x_hi] with step
/// 0.01 / max(1, alpha) (interpolation error ~1e-14 relative); direct
/// evaluation outside. For transforms that need psi at many points.
std::function<cplx(double)> tabulated_liouville(double alpha, double k, double x_lo, double x_hi);

/// Whether the family lives on x < 0 only (its Wigner function vanishes for x >= 0).
bool is_half_line(Family family);

/// psi(x) for the wall, robin and liouville families. The free family is
/// not normalisable on a line and has no pointwise wavefunction here; use
/// gaussian_envelope_state instead (throws ConfigError).
std::function<cplx(double)> make_wavefunction(const StateSpec& spec);

/// (amp_plus e^{ikx} + amp_minus e^{-ikx}) exp(-x^2 / (2 Lambda^2)).
std::function<cplx(double)> gaussian_envelope_state(const StateSpec& spec, double envelope_width);

}  // namespace starwall::states
