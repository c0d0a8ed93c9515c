#include "starwall/star/star_product.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/transforms.hpp"
#include "starwall/star/operands.hpp"
#include "starwall/states/closed_forms.hpp"

namespace starwall::star {

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Centred mode numbers -floor(n/2) .. ceil(n/2) - 1.
long mode_of(std::size_t index, std::size_t n) {
  return static_cast<long>(index) - static_cast<long>(n / 2);
}

// D(a, i) = exp(sign * 2 pi i m_a i / n) for a mode range of length n_modes
// starting at m_first.
Eigen::MatrixXcd phase_matrix(long m_first, std::size_t n_modes, std::size_t n, double sign) {
  Eigen::MatrixXcd d(n_modes, n);
  for (std::size_t a = 0; a < n_modes; ++a) {
    const double m = static_cast<double>(m_first + static_cast<long>(a));
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = sign * 2.0 * kPi * m * static_cast<double>(i) / static_cast<double>(n);
      d(a, i) = std::polar(1.0, angle);
    }
  }
  return d;
}

RowMatrix spectrum(const core::Field& f) {
  const auto& grid = f.grid();
  const std::size_t nx = grid.x().size();
  const std::size_t np = grid.p().size();
  const Eigen::MatrixXcd dx = phase_matrix(mode_of(0, nx), nx, nx, -1.0);
  const Eigen::MatrixXcd dp = phase_matrix(mode_of(0, np), np, np, -1.0);
  const Eigen::Map<const RowMatrix> values(f.values().data(), nx, np);
  RowMatrix out = dx * values * dp.transpose();
  out /= static_cast<double>(nx * np);
  return out;
}

double binomial(int n, int j) {
  double r = 1.0;
  for (int i = 1; i <= j; ++i) r = r * (n - j + i) / i;
  return r;
}

core::Field bopp(const PPolynomial& poly, const core::Field& g, double sign) {
  const auto& grid = g.grid();
  const int degree = static_cast<int>(poly.size()) - 1;
  std::vector<cplx> out(grid.size(), cplx{});
  if (degree < 0) return core::Field(grid, std::move(out), core::FieldKind::complex);
  std::vector<core::Field> derivs;
  derivs.reserve(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) derivs.push_back(core::x_derivative(g, j));
  const cplx shift(0.0, sign * 0.5);
  for (int n = 0; n <= degree; ++n) {
    const double c = poly[static_cast<std::size_t>(n)];
    if (c == 0.0) continue;
    for (int j = 0; j <= n; ++j) {
      const cplx factor = c * binomial(n, j) * std::pow(shift, j);
      const auto d = derivs[static_cast<std::size_t>(j)].values();
      for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
        for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
          const std::size_t idx = grid.index(ix, ip);
          out[idx] += factor * std::pow(grid.p().at(ip), n - j) * d[idx];
        }
      }
    }
  }
  return core::Field(grid, std::move(out), core::FieldKind::complex);
}

void require_real(cplx x, cplx p, const char* name) {
  if (x.imag() != 0.0 || p.imag() != 0.0) {
    throw DomainError(fmt::format("{} is only available at real (x, p)", name));
  }
}

}  // namespace

core::Field star(const core::Field& f, const core::Field& g, std::vector<std::string>* warnings) {
  if (!(f.grid() == g.grid())) throw GridError("star product operands live on different grids");
  const auto& grid = f.grid();
  const std::size_t nx = grid.x().size();
  const std::size_t np = grid.p().size();

  if (warnings != nullptr) {
    const double ef = edge_decay_ratio(f);
    const double eg = edge_decay_ratio(g);
    if (std::max(ef, eg) > 1e-6) {
      warnings->push_back(fmt::format(
          "star operands do not decay at the window edges (edge/max = {:.3g}, {:.3g}); "
          "periodic images contaminate the product",
          ef, eg));
    }
  }

  const RowMatrix fs = spectrum(f);
  const RowMatrix gs = spectrum(g);
  const double wx = 2.0 * kPi / grid.x().period();
  const double wp = 2.0 * kPi / grid.p().period();

  // a(c, b) = exp(i w_x m_c w_p q_b / 2), used for both twist factors.
  RowMatrix twist(nx, np);
  for (std::size_t c = 0; c < nx; ++c) {
    for (std::size_t b = 0; b < np; ++b) {
      const double angle = 0.5 * wx * static_cast<double>(mode_of(c, nx)) * wp *
                           static_cast<double>(mode_of(b, np));
      twist(c, b) = std::polar(1.0, angle);
    }
  }

  // Product spectrum over modes M = m + m', Q = q + q'.
  const std::size_t mx = 2 * nx - 1;
  const std::size_t mp = 2 * np - 1;
  RowMatrix h = RowMatrix::Zero(mx, mp);
  core::parallel_for(mx, [&](std::size_t row) {
    const std::size_t a_lo = row >= nx - 1 ? row - (nx - 1) : 0;
    const std::size_t a_hi = std::min(row, nx - 1);
    for (std::size_t a = a_lo; a <= a_hi; ++a) {
      const std::size_t c = row - a;
      for (std::size_t b = 0; b < np; ++b) {
        const cplx fv = fs(a, b);
        if (fv == cplx{}) continue;
        // exp(i (w_x m_c w_p q_b - w_p q_d w_x m_a) / 2)
        const cplx left = fv * twist(c, b);
        for (std::size_t d = 0; d < np; ++d) {
          h(row, b + d) += left * gs(c, d) * std::conj(twist(a, d));
        }
      }
    }
  });

  const Eigen::MatrixXcd ex = phase_matrix(2 * mode_of(0, nx), mx, nx, 1.0);
  const Eigen::MatrixXcd ep = phase_matrix(2 * mode_of(0, np), mp, np, 1.0);
  RowMatrix out = ex.transpose() * h * ep;
  return core::Field(grid, std::vector<cplx>(out.data(), out.data() + out.size()),
                     core::FieldKind::complex);
}

core::Field star_left(const PPolynomial& poly, const core::Field& g) { return bopp(poly, g, -1.0); }

core::Field star_right(const core::Field& g, const PPolynomial& poly) { return bopp(poly, g, 1.0); }

double cutoff_profile(double x, double x_min, double x_max, double taper_fraction) {
  if (!(x_max > x_min) || !(taper_fraction > 0.0) || taper_fraction > 0.5) {
    throw ConfigError("cutoff needs x_min < x_max and 0 < taper_fraction <= 0.5");
  }
  if (x <= x_min || x >= x_max) return 0.0;
  const double taper = taper_fraction * (x_max - x_min);
  const double s = taper / 12.0;
  const double c1 = x_min + 0.5 * taper;
  const double c2 = x_max - 0.5 * taper;
  return 0.5 * (std::erf((x - c1) / s) - std::erf((x - c2) / s));
}

core::Field apply_x_cutoff(const core::Field& field, double x_min, double x_max,
                           double taper_fraction) {
  const auto& grid = field.grid();
  std::vector<cplx> out(field.values().begin(), field.values().end());
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    const double w = cutoff_profile(grid.x().at(ix), x_min, x_max, taper_fraction);
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) out[grid.index(ix, ip)] *= w;
  }
  return core::Field(grid, std::move(out), field.kind());
}

AnalyticOperand rho_bar_operand(double k) {
  return {"rho_bar", [k](cplx x, cplx p, int order) {
            require_real(x, p, "rho_bar");
            return cplx(states::rho_bar_unmasked(k, x.real(), p.real(), order));
          }};
}

AnalyticOperand half_line_operand(double k, double phase) {
  return {"half_line", [k, phase](cplx x, cplx p, int order) {
            require_real(x, p, "half-line Wigner function");
            return cplx(states::half_line_rho(k, phase, x.real(), p.real(), order));
          }};
}

AnalyticOperand liouville_operand(const states::LiouvilleEvaluator& evaluator) {
  return {"rho_alpha", [evaluator](cplx x, cplx p, int order) {
            return evaluator.evaluate(x, p, order).derivatives.back();
          }};
}

double edge_decay_ratio(const core::Field& f) {
  const double peak = f.sup_norm();
  if (peak == 0.0) return 0.0;
  const auto& grid = f.grid();
  const std::size_t nx = grid.x().size();
  const std::size_t np = grid.p().size();
  double edge = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    edge = std::max({edge, std::abs(f(ix, 0)), std::abs(f(ix, np - 1))});
  }
  for (std::size_t ip = 0; ip < np; ++ip) {
    edge = std::max({edge, std::abs(f(0, ip)), std::abs(f(nx - 1, ip))});
  }
  return edge / peak;
}

}  // namespace starwall::star
