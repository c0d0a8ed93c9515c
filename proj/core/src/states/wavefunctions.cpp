#include "starwall/states/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>

#include "starwall/core/errors.hpp"
#include "starwall/core/parallel.hpp"
#include "starwall/specfun/bessel.hpp"

namespace starwall::states {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::wall: return "wall";
    case Family::robin: return "robin";
    case Family::liouville: return "liouville";
    case Family::free_superposition: return "free-superposition";
  }
  return "wall";
}

Family family_from_string(std::string_view name) {
  if (name == "wall") return Family::wall;
  if (name == "robin") return Family::robin;
  if (name == "liouville") return Family::liouville;
  if (name == "free-superposition" || name == "free") return Family::free_superposition;
  throw ConfigError("unknown state family '" + std::string(name) + "'");
}

void StateSpec::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("state: k must be positive");
  if (family == Family::liouville && !(alpha > 0.0)) {
    throw ConfigError("state: alpha must be positive");
  }
  if (family == Family::robin && !std::isfinite(L)) throw ConfigError("state: L must be finite");
  if (family == Family::free_superposition && !(sigma_reg > 0.0)) {
    throw ConfigError("state: sigma_reg must be positive");
  }
}

double psi_wall(double k, double x) { return x < 0.0 ? std::sin(k * x) : 0.0; }

double robin_phase(double k, double L) { return std::atan(-L * k); }

double psi_robin(double k, double L, double x) {
  return x < 0.0 ? std::sin(k * x + robin_phase(k, L)) : 0.0;
}

LiouvilleSample psi_liouville_checked(double alpha, double k, double x) {
  const double z = std::exp(alpha * x) / alpha;
  if (!(z < 745.0)) return {0.0, true};
  return {specfun::bessel_k_imag_order(k / alpha, z), false};
}

double psi_liouville(double alpha, double k, double x) {
  return psi_liouville_checked(alpha, k, x).value;
}

std::function<cplx(double)> tabulated_liouville(double alpha, double k, double x_lo, double x_hi) {
  if (!(alpha > 0.0) || !(x_hi > x_lo)) {
    throw ConfigError("tabulated_liouville: need alpha > 0 and x_hi > x_lo");
  }
  const double h = 0.01 / std::max(1.0, alpha);
  const auto n = static_cast<std::size_t>(std::ceil((x_hi - x_lo) / h)) + 1;
  std::vector<double> values(n);
  core::parallel_for(n, [&](std::size_t i) { values[i] = psi_liouville(alpha, k, x_lo + h * static_cast<double>(i)); });
  const double end = x_lo + h * static_cast<double>(n - 1);
  auto spline = std::make_shared<boost::math::interpolators::cardinal_quintic_b_spline<double>>(
      values.data(), n, x_lo, h);
  return [spline, alpha, k, x_lo, end](double x) {
    if (x < x_lo || x > end) return cplx(psi_liouville(alpha, k, x));
    return cplx((*spline)(x));
  };
}

bool is_half_line(Family family) { return family == Family::wall || family == Family::robin; }

std::function<cplx(double)> make_wavefunction(const StateSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::wall:
      return [k = spec.k](double x) { return cplx(psi_wall(k, x)); };
    case Family::robin:
      return [k = spec.k, L = spec.L](double x) { return cplx(psi_robin(k, L, x)); };
    case Family::liouville:
      return [a = spec.alpha, k = spec.k](double x) { return cplx(psi_liouville(a, k, x)); };
    case Family::free_superposition:
      break;
  }
  throw ConfigError("free-superposition states need an envelope; use gaussian_envelope_state");
}

std::function<cplx(double)> gaussian_envelope_state(const StateSpec& spec, double envelope_width) {
  spec.validate();
  if (!(envelope_width > 0.0)) throw ConfigError("envelope width must be positive");
  return [spec, envelope_width](double x) {
    const cplx plane = spec.amp_plus * std::polar(1.0, spec.k * x) +
                       spec.amp_minus * std::polar(1.0, -spec.k * x);
    return plane * std::exp(-x * x / (2.0 * envelope_width * envelope_width));
  };
}

}  // namespace starwall::states
