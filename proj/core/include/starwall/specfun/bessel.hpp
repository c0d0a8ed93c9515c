#pragma once

namespace starwall::specfun {

/// K_{i mu}(z) = integral_0^inf exp(-z cosh t) cos(mu t) dt for z > 0,
/// |mu| <= 50. The integral is cut where z cosh t exceeds 745 (the
/// integrand underflows there); z > 745 returns 0.
/// Throws DomainError outside that domain.
double bessel_k_imag_order(double mu, double z);

}  // namespace starwall::specfun
