#include "starwall/specfun/bessel.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "starwall/core/conventions.hpp"
#include "starwall/core/errors.hpp"
#include "starwall/specfun/log_gamma.hpp"

namespace starwall::specfun {

namespace {

// K_{i mu}(z) = -pi Im I_{i mu}(z) / sinh(pi mu), I_{i mu} by its power series.
double k_series(double mu, double z) {
  const cplx q = z * z / 4.0;
  cplx term = std::exp(cplx(0.0, mu) * std::log(z / 2.0) - log_gamma(cplx(1.0, mu)));
  cplx sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<double>(m) * cplx(m, mu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return -kPi * sum.imag() / std::sinh(kPi * mu);
}

}  // namespace

double bessel_k_imag_order(double mu, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(fmt::format("bessel_k_imag_order: z must be positive (got {})", z));
  }
  if (!(std::abs(mu) <= 50.0)) {
    throw DomainError(fmt::format("bessel_k_imag_order: |mu| must be <= 50 (got {})", mu));
  }
  constexpr double kCut = 745.0;
  if (z >= kCut) return 0.0;
  mu = std::abs(mu);
  if (z <= 2.0 && mu >= 0.05) return k_series(mu, z);
  const double t_end = std::acosh(kCut / z);
  const auto f = [&](double t) { return std::exp(-z * std::cosh(t)) * std::cos(mu * t); };

  // Panels no wider than half an oscillation keep each adaptive call cheap.
  const double width = std::min(1.0, kPi / std::max(std::abs(mu), 1e-12));
  const auto panels = static_cast<std::size_t>(std::ceil(t_end / width));
  double sum = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) * width;
    const double b = std::min(t_end, a + width);
    sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 8, 1e-15);
  }
  return sum;
}

}  // namespace starwall::specfun
