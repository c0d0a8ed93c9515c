#include "starwall/states/closed_forms.hpp"

#include <cmath>

#include "starwall/core/conventions.hpp"
#include "starwall/core/errors.hpp"

namespace starwall::states {

namespace {

// d^n/dx^n of S(u) = sin(2xu) / (2u).
double s_term(double x, double u, int n) {
  if (n == 0) return 0.5 * sin_ratio(2.0 * x, u);
  return std::pow(2.0 * u, n - 1) * std::sin(2.0 * x * u + n * kPi / 2.0);
}

// d^n/dx^n of cos(2kx + c).
double c_term(double x, double k, double c, int n) {
  return std::pow(2.0 * k, n) * std::cos(2.0 * k * x + c + n * kPi / 2.0);
}

double binomial(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

}  // namespace

double sin_ratio(double z, double u) {
  if (std::abs(u) >= 1e-4) return std::sin(z * u) / u;
  const double zu2 = (z * u) * (z * u);
  // z (1 - (zu)^2/3! + (zu)^4/5! - (zu)^6/7! + (zu)^8/9!)
  return z * (1.0 - zu2 / 6.0 * (1.0 - zu2 / 20.0 * (1.0 - zu2 / 42.0 * (1.0 - zu2 / 72.0))));
}

double half_line_rho(double k, double phase, double x, double p, int x_order) {
  if (x_order < 0) throw ConfigError("derivative order must be non-negative");
  double cross = 0.0;
  for (int j = 0; j <= x_order; ++j) {
    cross += binomial(x_order, j) * c_term(x, k, 2.0 * phase, j) * s_term(x, p, x_order - j);
  }
  return s_term(x, p + k, x_order) + s_term(x, p - k, x_order) - 2.0 * cross;
}

double rho_bar_unmasked(double k, double x, double p, int x_order) {
  return half_line_rho(k, 0.0, x, p, x_order);
}

double rho_bar_closed(double k, double x, double p) {
  return x < 0.0 ? half_line_rho(k, 0.0, x, p) : 0.0;
}

double rho_robin_closed(double k, double L, double x, double p) {
  return x < 0.0 ? half_line_rho(k, std::atan(-L * k), x, p) : 0.0;
}

double gaussian_delta(double u, double sigma) {
  return std::exp(-u * u / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
}

double rho_free_family(double a_plus, double a_minus, cplx b, double k, double sigma, double x,
                       double p) {
  const double interference = 2.0 * std::abs(b) * std::cos(2.0 * k * x + std::arg(b));
  return a_plus * gaussian_delta(p - k, sigma) + a_minus * gaussian_delta(p + k, sigma) +
         gaussian_delta(p, sigma) * interference;
}

core::Field rho_free_regularized(const StateSpec& spec, const core::PhaseSpaceGrid& grid) {
  spec.validate();
  const double a_plus = std::norm(spec.amp_plus);
  const double a_minus = std::norm(spec.amp_minus);
  const cplx b = spec.amp_plus * std::conj(spec.amp_minus);
  return core::Field::sample(grid, [&](double x, double p) {
    return rho_free_family(a_plus, a_minus, b, spec.k, spec.sigma_reg, x, p);
  });
}

}  // namespace starwall::states
