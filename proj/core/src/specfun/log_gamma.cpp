#include "starwall/specfun/log_gamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "starwall/core/errors.hpp"

namespace starwall::specfun {

namespace {

// Lanczos approximation, g = 607/128 with 14 terms (Godfrey's coefficients);
// relative error near 1e-15 for Re z >= 1.
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx lanczos_log_gamma(cplx z) {
  cplx y = z;
  const cplx tmp = z + 5.24218750000000000;
  const cplx head = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return head + std::log(2.5066282746310005 * ser / z);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) {
    const auto n = static_cast<long>(z.real());
    throw PoleError("log_gamma: pole at z = " + std::to_string(n), n);
  }
  if (z.real() >= 1.0) return lanczos_log_gamma(z);
  // Shift into Re z >= 1 and walk back with the recurrence; summing principal
  // logs keeps log_gamma(z+1) = log_gamma(z) + log(z) exact by construction.
  const auto shift = static_cast<int>(std::ceil(1.0 - z.real()));
  cplx correction = 0.0;
  for (int m = 0; m < shift; ++m) correction += std::log(z + static_cast<double>(m));
  return lanczos_log_gamma(z + static_cast<double>(shift)) - correction;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

}  // namespace starwall::specfun
