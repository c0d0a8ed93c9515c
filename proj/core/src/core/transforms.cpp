#include "starwall/core/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "starwall/core/errors.hpp"

namespace starwall::core {

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

ConjugateAxis conjugate_of(const Axis& p) {
  return ConjugateAxis{kPi / (static_cast<double>(p.size()) * p.step()), p.size()};
}

// E(j, m) = exp(2 i p_j y_m)
Eigen::MatrixXcd phase_matrix(const Axis& p, const ConjugateAxis& y) {
  Eigen::MatrixXcd e(p.size(), y.n);
  for (std::size_t j = 0; j < p.size(); ++j) {
    for (std::size_t m = 0; m < y.n; ++m) {
      const double phase = 2.0 * p.at(j) * y.at(m);
      e(j, m) = cplx(std::cos(phase), std::sin(phase));
    }
  }
  return e;
}

// Lagrange weights for nodes s..s+3 at local coordinate u in [0, 3].
std::array<double, 4> cubic_weights(double u) {
  std::array<double, 4> w{};
  for (int j = 0; j < 4; ++j) {
    double num = 1.0;
    double den = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m == j) continue;
      num *= u - m;
      den *= j - m;
    }
    w[j] = num / den;
  }
  return w;
}

struct Stencil {
  std::size_t start;
  std::array<double, 4> w;
  int width;
};

// Locates coordinate t (in units of the lattice step, origin at node 0) on an
// n-node lattice. Coordinates within 1e-9 of a node snap onto it.
Stencil locate(double t, std::size_t n, Interpolation order, const char* what) {
  constexpr double snap = 1e-9;
  const double last = static_cast<double>(n - 1);
  if (t < -snap || t > last + snap) {
    throw WindowError(std::string("rotated point outside the kernel ") + what + " range");
  }
  t = std::clamp(t, 0.0, last);
  const double nearest = std::round(t);
  if (std::abs(t - nearest) < snap) t = nearest;
  if (order == Interpolation::bilinear || n < 4) {
    const auto i = std::min(static_cast<std::size_t>(std::floor(t)), n - 2);
    const double f = t - static_cast<double>(i);
    return Stencil{i, {1.0 - f, f, 0.0, 0.0}, 2};
  }
  const auto base = static_cast<long>(std::floor(t)) - 1;
  const auto start = static_cast<std::size_t>(std::clamp<long>(base, 0, static_cast<long>(n) - 4));
  return Stencil{start, cubic_weights(t - static_cast<double>(start)), 4};
}

}  // namespace

KernelField partial_ft_p(const Field& rho) {
  const auto& grid = rho.grid();
  const ConjugateAxis y = conjugate_of(grid.p());
  const Eigen::MatrixXcd e = phase_matrix(grid.p(), y) * grid.p().step();
  const Eigen::Map<const RowMatrix> r(rho.values().data(), grid.x().size(), grid.p().size());
  RowMatrix w = r * e;
  return KernelField(grid.x(), y, grid.p(), std::vector<cplx>(w.data(), w.data() + w.size()));
}

Field inverse_partial_ft_p(const KernelField& kernel, FieldKind kind) {
  const Axis& p = kernel.source_p();
  const ConjugateAxis expected = conjugate_of(p);
  if (kernel.y().n != expected.n ||
      std::abs(kernel.y().step - expected.step) > 1e-12 * expected.step) {
    throw GridError("unsupported grid: kernel y-lattice is not conjugate to its p-axis");
  }
  const Eigen::MatrixXcd e = phase_matrix(p, kernel.y()).adjoint() /
                             (static_cast<double>(p.size()) * p.step());
  const Eigen::Map<const RowMatrix> w(kernel.values().data(), kernel.x().size(), kernel.y().n);
  RowMatrix r = w * e;
  return Field(PhaseSpaceGrid(kernel.x(), p), std::vector<cplx>(r.data(), r.data() + r.size()),
               kind);
}

KernelField sample_kernel(const std::function<cplx(double)>& psi, const Axis& x_axis,
                          const Axis& p_axis) {
  const ConjugateAxis y = conjugate_of(p_axis);
  std::vector<cplx> values(x_axis.size() * y.n);
  parallel_for(x_axis.size(), [&](std::size_t ix) {
    const double x = x_axis.at(ix);
    for (std::size_t m = 0; m < y.n; ++m) {
      values[ix * y.n + m] = psi(x + y.at(m)) * std::conj(psi(x - y.at(m)));
    }
  });
  return KernelField(x_axis, y, p_axis, std::move(values));
}

MatrixWindow aligned_window(const KernelField& kernel, double a_min, double a_max) {
  if (!(a_min < a_max)) throw WindowError("matrix window needs a_min < a_max");
  const Axis& x = kernel.x();
  const double start_index = std::ceil((a_min - x.min()) / x.step() - 1e-9);
  const double start = x.min() + start_index * x.step();
  const double step = 2.0 * kernel.y().step;
  const auto n = static_cast<std::size_t>(std::floor((a_max - start) / step + 1e-9)) + 1;
  if (n < 2) throw WindowError("matrix window holds fewer than 2 points at step 2*dy");
  return MatrixWindow{start, step, n};
}

Eigen::MatrixXcd kernel_to_matrix(const KernelField& kernel, const MatrixWindow& window,
                                  Interpolation order) {
  if (window.n < 1) throw WindowError("empty matrix window");
  const Axis& xa = kernel.x();
  const ConjugateAxis& ya = kernel.y();
  const double y_origin = ya.at(0);
  Eigen::MatrixXcd k(window.n, window.n);
  parallel_for(window.n, [&](std::size_t i) {
    for (std::size_t j = 0; j < window.n; ++j) {
      const double a = window.at(i);
      const double b = window.at(j);
      const Stencil sx = locate(((a + b) / 2.0 - xa.min()) / xa.step(), xa.size(), order, "x");
      const Stencil sy = locate(((a - b) / 2.0 - y_origin) / ya.step, ya.n, order, "y");
      cplx acc = 0.0;
      for (int u = 0; u < sx.width; ++u) {
        if (sx.w[u] == 0.0) continue;
        cplx row = 0.0;
        for (int v = 0; v < sy.width; ++v) {
          if (sy.w[v] == 0.0) continue;
          row += sy.w[v] * kernel(sx.start + u, sy.start + v);
        }
        acc += sx.w[u] * row;
      }
      k(i, j) = acc;
    }
  });
  return k;
}

std::vector<double> spectral_derivative_stencil(std::size_t n, double h, int order) {
  std::vector<double> c(n, 0.0);
  const double period = static_cast<double>(n) * h;
  const bool even_n = n % 2 == 0;
  const std::size_t m_max = even_n ? n / 2 - 1 : (n - 1) / 2;
  for (std::size_t d = 0; d < n; ++d) {
    double s = order == 0 ? 1.0 : 0.0;
    const double dx = static_cast<double>(d) * h;
    for (std::size_t m = 1; m <= m_max; ++m) {
      const double w = 2.0 * kPi * static_cast<double>(m) / period;
      const double wp = std::pow(w, order);
      if (order % 2 == 0) {
        s += 2.0 * ((order / 2) % 2 == 0 ? 1.0 : -1.0) * wp * std::cos(w * dx);
      } else {
        // 2 i^(order+1) w^order sin(w dx)
        s += 2.0 * (((order + 1) / 2) % 2 == 0 ? 1.0 : -1.0) * wp * std::sin(w * dx);
      }
    }
    if (even_n && order % 2 == 0) {
      const double w = kPi * static_cast<double>(n) / period;
      s += ((order / 2) % 2 == 0 ? 1.0 : -1.0) * std::pow(w, order) * std::cos(w * dx);
    }
    c[d] = s / static_cast<double>(n);
  }
  return c;
}

Field x_derivative(const Field& field, int order) {
  if (order < 0) throw ConfigError("derivative order must be non-negative");
  if (order == 0) return field;
  const auto& grid = field.grid();
  const std::size_t n = grid.x().size();
  const std::vector<double> c = spectral_derivative_stencil(n, grid.x().step(), order);
  Eigen::MatrixXd d(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) d(j, l) = c[(j + n - l) % n];
  }
  const Eigen::Map<const RowMatrix> f(field.values().data(), n, grid.p().size());
  RowMatrix out = d.cast<cplx>() * f;
  return Field(grid, std::vector<cplx>(out.data(), out.data() + out.size()), field.kind());
}

}  // namespace starwall::core
