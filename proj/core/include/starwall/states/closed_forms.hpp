#pragma once

#include "starwall/core/field.hpp"
#include "starwall/states/state_spec.hpp"

namespace starwall::states {

/// sin(z u) / u, switching to a 5-term Taylor series in u when |u| < 1e-4.
double sin_ratio(double z, double u);

/// Closed-form Wigner function of the half-line state theta(-x) sin(kx + phase),
/// up to the constant factor -1/(2 pi):
///   S(p+k) + S(p-k) - 2 cos(2kx + 2 phase) S(p),  S(u) = sin(2xu) / (2u).
/// Without the theta(-x) mask; `x_order` selects the exact x-derivative.
double half_line_rho(double k, double phase, double x, double p, int x_order = 0);

/// rho_bar(x, p) = sin[2x(p+k)]/(2(p+k)) + sin[2x(p-k)]/(2(p-k)) - 2 cos(2kx) sin(2xp)/(2p),
/// multiplied by theta(-x).
double rho_bar_closed(double k, double x, double p);

/// rho_bar without the theta(-x) mask, with exact x-derivatives.
double rho_bar_unmasked(double k, double x, double p, int x_order = 0);

/// Robin analogue of rho_bar_closed (phase atan(-L k)), masked by theta(-x).
double rho_robin_closed(double k, double L, double x, double p);

/// Normalised Gaussian of width sigma: exp(-u^2/(2 sigma^2)) / (sigma sqrt(2 pi)).
double gaussian_delta(double u, double sigma);

/// Gaussian-smeared general free solution
///   a_plus d(p-k) + a_minus d(p+k) + d(p) (b e^{2ikx} + conj(b) e^{-2ikx}).
double rho_free_family(double a_plus, double a_minus, cplx b, double k, double sigma, double x,
                       double p);

/// The pure-state member built from amplitudes: a_pm = |amp_pm|^2 and
/// b = amp_plus conj(amp_minus), so the interference term is
/// 2 sqrt(a_plus a_minus) d(p) cos(2kx + phi), phi = arg(amp_plus conj(amp_minus)).
core::Field rho_free_regularized(const StateSpec& spec, const core::PhaseSpaceGrid& grid);

}  // namespace starwall::states
