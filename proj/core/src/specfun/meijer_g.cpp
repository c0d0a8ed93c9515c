#include "starwall/specfun/meijer_g.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/quadrature.hpp"
#include "starwall/specfun/log_gamma.hpp"

namespace starwall::specfun {

namespace {

constexpr double kTwoPi = 2.0 * kPi;
constexpr double kExpGuard = 700.0;

cplx guarded_exp(cplx e) {
  if (e.real() > kExpGuard) {
    throw NumericsError(fmt::format("Meijer G: exponent {:.1f} overflows", e.real()));
  }
  if (e.real() < -kExpGuard) return 0.0;
  return std::exp(e);
}

double distance_to_integer(cplx d) {
  return std::hypot(d.real() - std::round(d.real()), d.imag());
}

cplx principal_log(cplx w) {
  if (w == cplx(0.0)) throw DomainError("Meijer G: w must be nonzero");
  return std::log(w);
}

}  // namespace

void MellinBarnesSpec::validate() const {
  if (!(sigma < 0.0)) throw ConfigError("MellinBarnesSpec: sigma must be negative");
  if (!(t_max > 0.0)) throw ConfigError("MellinBarnesSpec: t_max must be positive");
  if (n_nodes < 64) throw ConfigError("MellinBarnesSpec: n_nodes must be at least 64");
}

GParams GParams::conjugate_pairs(const std::array<cplx, 4>& b) {
  std::array<bool, 4> used{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (used[i]) continue;
    bool matched = false;
    for (std::size_t j = 0; j < 4 && !matched; ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(b[j] - std::conj(b[i])) <= 1e-14 * (1.0 + std::abs(b[i]))) {
        used[i] = used[j] = true;
        matched = true;
      }
    }
    if (!matched) throw ConfigError("GParams: parameters do not form conjugate pairs");
  }
  return GParams{b};
}

double GParams::min_integer_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) best = std::min(best, distance_to_integer(b[i] - b[j]));
  }
  return best;
}

double GParams::min_real_part() const {
  double m = b[0].real();
  for (const auto& v : b) m = std::min(m, v.real());
  return m;
}

GResult meijer_g04_contour_log(cplx log_w, const GParams& params, const MellinBarnesSpec& spec,
                               int euler_order) {
  spec.validate();
  if (euler_order < 0) throw ConfigError("Meijer G: euler_order must be non-negative");
  if (params.min_real_part() <= spec.sigma) {
    throw ContourError(fmt::format(
        "Meijer G contour at Re s = {} is not left of every pole (min Re b = {})", spec.sigma,
        params.min_real_part()));
  }
  const double decay = kTwoPi - std::abs(log_w.imag());
  if (decay <= 0.0) {
    throw BranchDomainError(fmt::format(
        "Meijer G contour: |Im log w| = {:.6f} >= 2 pi, the integrand does not decay",
        std::abs(log_w.imag())));
  }

  double beta_min = params.b[0].imag();
  double beta_max = beta_min;
  for (const auto& v : params.b) {
    beta_min = std::min(beta_min, v.imag());
    beta_max = std::max(beta_max, v.imag());
  }
  // The gamma product decays like exp(-2 pi |t|); the phase of w^s eats part of it.
  // A line far left of the poles sits near a saddle whose width in t grows like sqrt|sigma|.
  const double half_range =
      std::min(std::max(spec.t_max * kTwoPi / decay, std::sqrt(40.0 * std::abs(spec.sigma))), 400.0);
  const double t_lo = beta_min - half_range;
  const double t_hi = beta_max + half_range;
  // Panels no wider than twice the line-to-pole distance keep the nearest
  // pole outside each panel's convergence ellipse.
  const double pole_distance = params.min_real_part() - spec.sigma;
  const double max_width = std::min(1.0, 2.0 * pole_distance);
  const auto panels = static_cast<std::size_t>(std::ceil((t_hi - t_lo) / max_width));
  const std::size_t per_panel = std::max<std::size_t>(
      (spec.n_nodes + panels - 1) / panels,
      16 + static_cast<std::size_t>(std::ceil(0.5 * max_width * std::abs(log_w.real()))));

  const auto integrand = [&](double t) {
    const cplx s(spec.sigma, t);
    cplx e = s * log_w;
    for (const auto& b : params.b) e += log_gamma(b - s);
    const cplx base = guarded_exp(e);
    std::vector<cplx> out(static_cast<std::size_t>(euler_order) + 1);
    cplx power = 1.0;
    for (auto& o : out) {
      o = base * power;
      power *= s;
    }
    return out;
  };

  const core::GaussRule& rule = core::gauss_legendre(per_panel);
  const double width = (t_hi - t_lo) / static_cast<double>(panels);
  std::vector<cplx> sums(static_cast<std::size_t>(euler_order) + 1);
  double l1 = 0.0;
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = t_lo + (static_cast<double>(k) + 0.5) * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto f = integrand(mid + 0.5 * width * rule.nodes[i]);
      const double w = 0.5 * width * rule.weights[i];
      for (std::size_t m = 0; m < f.size(); ++m) sums[m] += w * f[m];
      l1 += w * std::abs(f.back());
    }
  }

  GResult result;
  for (auto& v : sums) v /= kTwoPi;
  result.euler = sums;
  result.value = sums.back();
  result.terms = panels * per_panel;
  result.noise_floor = std::numeric_limits<double>::epsilon() * l1 / kTwoPi;
  const auto lo = integrand(t_lo);
  const auto hi = integrand(t_hi);
  result.tail_bound = (std::abs(lo.back()) + std::abs(hi.back())) / (kTwoPi * decay);
  const double magnitude = std::abs(result.value);
  if (result.tail_bound > 1e-10 * std::max(magnitude, std::numeric_limits<double>::min())) {
    result.warnings.push_back(fmt::format(
        "contour tail bound {:.3e} exceeds 1e-10 of |G| = {:.3e}; raise t_max", result.tail_bound,
        magnitude));
  }
  return result;
}

GResult meijer_g04_contour(cplx w, const GParams& params, const MellinBarnesSpec& spec,
                           int euler_order) {
  return meijer_g04_contour_log(principal_log(w), params, spec, euler_order);
}

GResult meijer_g04_series_log(cplx log_w, const GParams& params, int euler_order) {
  if (euler_order < 0) throw ConfigError("Meijer G: euler_order must be non-negative");
  const cplx w = std::exp(log_w);
  if (!(std::abs(w) < 1.0)) {
    throw DomainError(fmt::format("Meijer G residue series needs |w| < 1 (got {:.3e})",
                                  std::abs(w)));
  }
  if (params.min_integer_separation() < 1e-6) {
    throw DegenerateParameterError(
        "Meijer G residue series: two parameters differ by an integer (double pole, e.g. "
        "p = 0 or p = +-k); use the contour method");
  }
  constexpr std::size_t kMaxTerms = 2000;
  const auto orders = static_cast<std::size_t>(euler_order) + 1;

  GResult result;
  result.euler.assign(orders, 0.0);
  double largest_leading = 0.0;
  double largest_term = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    std::array<cplx, 3> c{};
    std::size_t idx = 0;
    cplx lead = params.b[j] * log_w;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == j) continue;
      c[idx++] = params.b[i] - params.b[j];
      lead += log_gamma(params.b[i] - params.b[j]);
    }
    cplx term = guarded_exp(lead);
    largest_leading = std::max(largest_leading, std::abs(term));
    std::vector<cplx> partial(orders, 0.0);
    std::size_t n = 0;
    for (;; ++n) {
      const cplx s = params.b[j] + static_cast<double>(n);
      cplx power = 1.0;
      double contribution = 0.0;
      for (std::size_t m = 0; m < orders; ++m) {
        partial[m] += term * power;
        contribution = std::max(contribution, std::abs(term * power));
        power *= s;
      }
      largest_term = std::max(largest_term, contribution);
      double scale = 0.0;
      for (const auto& v : partial) scale = std::max(scale, std::abs(v));
      if (n >= 2 && contribution <= 1e-16 * scale) {
        result.tail_bound += contribution;
        break;
      }
      if (n + 1 >= kMaxTerms) {
        result.tail_bound += contribution;
        result.warnings.push_back("residue series hit the term cap before converging");
        break;
      }
      const double next = static_cast<double>(n + 1);
      term *= -w / (next * (c[0] - next) * (c[1] - next) * (c[2] - next));
    }
    result.terms += n + 1;
    for (std::size_t m = 0; m < orders; ++m) result.euler[m] += partial[m];
  }
  result.value = result.euler.back();
  result.noise_floor = std::numeric_limits<double>::epsilon() * largest_term;
  const double magnitude = std::abs(result.euler.front());
  if (largest_leading > 1e8 * magnitude) {
    result.warnings.push_back(fmt::format(
        "residue series cancels by a factor {:.1e} between pole strings", largest_leading /
                                                                               std::max(magnitude, 1e-300)));
  }
  return result;
}

GResult meijer_g04_series(cplx w, const GParams& params, int euler_order) {
  return meijer_g04_series_log(principal_log(w), params, euler_order);
}

}  // namespace starwall::specfun
