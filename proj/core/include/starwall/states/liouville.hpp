#pragma once

#include <string>
#include <vector>

#include "starwall/core/field.hpp"
#include "starwall/specfun/meijer_g.hpp"

namespace starwall::states {

enum class GMethod { contour, series, automatic };

std::string_view to_string(GMethod method);
GMethod gmethod_from_string(std::string_view name);

struct LiouvilleValue {
  /// d^m rho / dx^m for m = 0..order.
  std::vector<cplx> derivatives;
  GMethod method_used = GMethod::series;
  std::vector<std::string> warnings;
  /// Absolute rounding level of value() (see GResult::noise_floor).
  double noise_floor = 0.0;

  cplx value() const { return derivatives.front(); }
};

/// Wigner function of the p^2 + exp(2 alpha x) eigenstate at energy k^2,
///   rho(x, p) = normalization * G^{40}_{04}(w | b),
///   w = exp(4 alpha x) / (2 alpha)^4,
///   b = { i(p-k), i(p+k), -i(p-k), -i(p+k) } / (2 alpha),
/// analytic in both x and p. Complex p moves the poles (used for the p +- i alpha
/// shifts); complex x changes the branch of w^s and is continued through
/// log w = 4 alpha x - 4 log(2 alpha).
///
/// x-derivatives are exact: d/dx acts on w^s as 4 alpha s.
/// With normalization 1/(8 pi) the result equals the Wigner transform of
/// K_{ik/alpha}(exp(alpha x)/alpha); the library otherwise leaves the
/// constant free and compares through fit_scale.
class LiouvilleEvaluator {
 public:
  LiouvilleEvaluator(double alpha, double k, specfun::MellinBarnesSpec mb = {},
                     GMethod method = GMethod::automatic, double normalization = 1.0);

  double alpha() const noexcept { return alpha_; }
  double k() const noexcept { return k_; }
  const specfun::MellinBarnesSpec& mellin_barnes() const noexcept { return mb_; }
  GMethod method() const noexcept { return method_; }
  double normalization() const noexcept { return normalization_; }

  cplx log_w(cplx x) const;
  specfun::GParams params(cplx p) const;

  /// Method `automatic` resolves to here: series when |w| < 0.3 and all
  /// parameter differences stay 0.05/alpha away from integers (|p -+ k| and
  /// |p| above 0.05 for real p), contour otherwise. Complex x past the
  /// contour's branch limit also falls back to the series.
  GMethod choose(cplx x, cplx p) const;

  LiouvilleValue evaluate(cplx x, cplx p, int x_order = 0) const;
  cplx operator()(cplx x, cplx p) const { return evaluate(x, p).value(); }

 private:
  double alpha_;
  double k_;
  specfun::MellinBarnesSpec mb_;
  GMethod method_;
  double normalization_;
};

/// rho_alpha(x, p); errors from the special-function layer propagate.
cplx rho_liouville(const LiouvilleEvaluator& evaluator, cplx x, cplx p);

/// rho_alpha on every lattice point (real-expected field).
core::Field sample_liouville(const LiouvilleEvaluator& evaluator, const core::PhaseSpaceGrid& grid,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace starwall::states
