#include "starwall/states/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "starwall/core/errors.hpp"

namespace starwall::states {

std::string_view to_string(GMethod method) {
  switch (method) {
    case GMethod::contour: return "contour";
    case GMethod::series: return "series";
    case GMethod::automatic: return "auto";
  }
  return "auto";
}

GMethod gmethod_from_string(std::string_view name) {
  if (name == "contour") return GMethod::contour;
  if (name == "series") return GMethod::series;
  if (name == "auto") return GMethod::automatic;
  throw ConfigError("unknown G-function method '" + std::string(name) + "'");
}

LiouvilleEvaluator::LiouvilleEvaluator(double alpha, double k, specfun::MellinBarnesSpec mb,
                                       GMethod method, double normalization)
    : alpha_(alpha), k_(k), mb_(mb), method_(method), normalization_(normalization) {
  if (!(alpha > 0.0)) throw ConfigError("LiouvilleEvaluator: alpha must be positive");
  if (!(k > 0.0)) throw ConfigError("LiouvilleEvaluator: k must be positive");
  if (!std::isfinite(normalization)) throw ConfigError("LiouvilleEvaluator: bad normalization");
  mb_.validate();
}

cplx LiouvilleEvaluator::log_w(cplx x) const {
  return 4.0 * alpha_ * x - 4.0 * std::log(2.0 * alpha_);
}

specfun::GParams LiouvilleEvaluator::params(cplx p) const {
  const cplx i(0.0, 1.0);
  const double s = 2.0 * alpha_;
  return specfun::GParams{{i * (p - k_) / s, i * (p + k_) / s, -i * (p - k_) / s,
                           -i * (p + k_) / s}};
}

GMethod LiouvilleEvaluator::choose(cplx x, cplx p) const {
  const cplx lw = log_w(x);
  const bool contour_ok = std::abs(lw.imag()) < 2.0 * kPi * 0.95;
  if (method_ != GMethod::automatic) {
    if (method_ == GMethod::contour && !contour_ok && std::exp(lw.real()) < 1.0) {
      return GMethod::series;
    }
    return method_;
  }
  const bool series_ok = std::exp(lw.real()) < 0.3 &&
                         params(p).min_integer_separation() > 0.05 / alpha_;
  if (series_ok || !contour_ok) return GMethod::series;
  return GMethod::contour;
}

LiouvilleValue LiouvilleEvaluator::evaluate(cplx x, cplx p, int x_order) const {
  LiouvilleValue out;
  if (normalization_ == 0.0) {
    out.derivatives.assign(static_cast<std::size_t>(x_order) + 1, 0.0);
    out.method_used = method_;
    return out;
  }
  const specfun::GParams b = params(p);
  const cplx lw = log_w(x);
  out.method_used = choose(x, p);
  specfun::GResult g;
  if (out.method_used == GMethod::series) {
    g = specfun::meijer_g04_series_log(lw, b, x_order);
  } else {
    // Keep the line the same distance left of the leftmost pole when complex
    // p shifts the parameters off the imaginary axis.
    specfun::MellinBarnesSpec shifted = mb_;
    shifted.sigma = std::min(b.min_real_part(), 0.0) + mb_.sigma;
    // For |w| > 1 the integrand has a saddle near Re s = -|w|^{1/4}; a line
    // through it avoids cancelling large contributions against each other.
    if (lw.real() > 0.0) shifted.sigma = std::min(shifted.sigma, -std::exp(0.25 * lw.real()));
    g = specfun::meijer_g04_contour_log(lw, b, shifted, x_order);
  }
  out.warnings = std::move(g.warnings);
  out.noise_floor = std::abs(normalization_) * g.noise_floor;
  out.derivatives.resize(g.euler.size());
  double factor = normalization_;
  for (std::size_t m = 0; m < g.euler.size(); ++m) {
    out.derivatives[m] = factor * g.euler[m];
    factor *= 4.0 * alpha_;
  }
  return out;
}

cplx rho_liouville(const LiouvilleEvaluator& evaluator, cplx x, cplx p) {
  return evaluator.evaluate(x, p).value();
}

core::Field sample_liouville(const LiouvilleEvaluator& evaluator, const core::PhaseSpaceGrid& grid,
                             std::vector<std::string>* warnings) {
  std::mutex mutex;
  std::vector<std::string> collected;
  core::Field field = core::Field::sample(grid, [&](double x, double p) {
    LiouvilleValue v = evaluator.evaluate(x, p);
    if (!v.warnings.empty()) {
      std::lock_guard lock(mutex);
      for (auto& w : v.warnings) collected.push_back(std::move(w));
    }
    return v.value();
  });
  std::sort(collected.begin(), collected.end());
  if (warnings) *warnings = std::move(collected);
  return field;
}

}  // namespace starwall::states
