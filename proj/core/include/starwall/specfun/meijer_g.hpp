#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "starwall/core/conventions.hpp"

namespace starwall::specfun {

/// Integration line Re s = sigma, truncated at |Im s - c| <= t_max around the
/// pole band, with at least n_nodes Gauss-Legendre nodes in total.
struct MellinBarnesSpec {
  double sigma = -0.25;
  double t_max = 12.0;
  std::size_t n_nodes = 512;

  /// Throws ConfigError unless sigma < 0, t_max > 0, n_nodes >= 64.
  void validate() const;
};

/// Parameters b1..b4 of G^{4,0}_{0,4}(w | b1, b2, b3, b4).
struct GParams {
  std::array<cplx, 4> b{};

  /// Builds parameters that must form conjugate pairs {b, conj b} (up to
  /// ordering); throws ConfigError otherwise. With real w such parameters
  /// give a real G.
  static GParams conjugate_pairs(const std::array<cplx, 4>& b);

  /// Smallest distance from any b_i - b_j (i != j) to an integer.
  /// Zero means the residue series has a higher-order pole.
  double min_integer_separation() const;
  double min_real_part() const;
};

/// G value plus accuracy metadata.
struct GResult {
  cplx value{};
  /// (w d/dw)^m G for m = 0..euler_order; value == euler.back().
  std::vector<cplx> euler;
  /// Contour: estimated size of the discarded tails. Series: magnitude of
  /// the first dropped term summed over the four strings.
  double tail_bound = 0.0;
  /// Contour: quadrature nodes used. Series: terms summed over all strings.
  std::size_t terms = 0;
  /// Absolute rounding level of the sum: machine epsilon times the integral of
  /// |integrand| / 2 pi (contour), or times the largest term (series).
  double noise_floor = 0.0;
  std::vector<std::string> warnings;
};

/// (1/2 pi i) integral over Re s = sigma of w^s prod_j Gamma(b_j - s) ds.
///
/// `euler_order` m inserts s^m into the integrand, i.e. returns
/// (w d/dw)^m G. `log_w` selects the branch of w^s = exp(s log_w) so the
/// result continues analytically in log w; |Im log_w| must stay below 2 pi or
/// the integrand stops decaying (BranchDomainError).
GResult meijer_g04_contour_log(cplx log_w, const GParams& params, const MellinBarnesSpec& spec,
                               int euler_order = 0);

/// Principal-branch convenience form; throws DomainError for w == 0.
GResult meijer_g04_contour(cplx w, const GParams& params, const MellinBarnesSpec& spec,
                           int euler_order = 0);

/// Sum of residues at s = b_j + n, n = 0, 1, ..., i.e.
///   sum_j sum_n (-1)^n / n! * w^(b_j + n) * prod_{i != j} Gamma(b_i - b_j - n),
/// truncated once a term drops below 1e-16 of its string's partial sum.
/// Requires |w| < 1 (DomainError) and simple poles, i.e. no b_i - b_j within
/// 1e-6 of an integer (DegenerateParameterError; use the contour method).
GResult meijer_g04_series_log(cplx log_w, const GParams& params, int euler_order = 0);

GResult meijer_g04_series(cplx w, const GParams& params, int euler_order = 0);

}  // namespace starwall::specfun
