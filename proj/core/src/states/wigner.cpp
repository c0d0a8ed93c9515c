#include "starwall/states/wigner.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/quadrature.hpp"
#include "starwall/core/transforms.hpp"

namespace starwall::states {

namespace {

struct Nodes {
  std::vector<double> y;
  std::vector<double> w;
};

Nodes composite_nodes(double a, double b, double panel_width, std::size_t per_panel) {
  Nodes out;
  if (!(b > a)) return out;
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / panel_width));
  const double width = (b - a) / static_cast<double>(panels);
  const core::GaussRule& rule = core::gauss_legendre(per_panel);
  out.y.reserve(panels * per_panel);
  out.w.reserve(panels * per_panel);
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      out.y.push_back(mid + 0.5 * width * rule.nodes[i]);
      out.w.push_back(0.5 * width * rule.weights[i]);
    }
  }
  return out;
}

// (1/pi) sum_i w_i exp(-2 i p y_i) f_i for every p of the axis. The phase
// advances by a fixed factor per p step and is recomputed exactly every
// kResync steps to bound rounding drift.
void transform_row(const Nodes& nodes, const std::vector<cplx>& f, const core::Axis& p_axis,
                   std::vector<cplx>& out) {
  constexpr std::size_t kResync = 32;
  const std::size_t n_p = p_axis.size();
  out.assign(n_p, 0.0);
  const double dp = n_p > 1 ? p_axis.at(1) - p_axis.at(0) : 0.0;
  for (std::size_t i = 0; i < nodes.y.size(); ++i) {
    const cplx a = nodes.w[i] * f[i];
    if (a == 0.0) continue;
    const cplx step = std::polar(1.0, -2.0 * dp * nodes.y[i]);
    cplx phase;
    for (std::size_t ip = 0; ip < n_p; ++ip) {
      if (ip % kResync == 0) {
        phase = std::polar(1.0, -2.0 * p_axis.at(ip) * nodes.y[i]);
      } else {
        phase *= step;
      }
      out[ip] += a * phase;
    }
  }
  for (auto& v : out) v /= kPi;
}

}  // namespace

WignerResult wigner_transform_numeric(const std::function<cplx(double)>& psi,
                                      const core::PhaseSpaceGrid& grid,
                                      const WignerOptions& options) {
  if (!(options.window_half_width > 0.0) || !(options.panel_width > 0.0) ||
      options.nodes_per_panel < 2) {
    throw ConfigError("wigner_transform_numeric: invalid quadrature options");
  }
  const double Y = options.window_half_width;
  const bool half_line = options.support == Support::half_line;
  std::vector<cplx> values(grid.size());
  std::vector<double> errors(grid.x().size(), 0.0);
  std::vector<int> clipped(grid.x().size(), 0);

  core::parallel_for(grid.x().size(), [&](std::size_t ix) {
    const double x = grid.x().at(ix);
    double lo = -Y;
    double hi = Y;
    if (half_line) {
      if (x >= 0.0) return;  // empty support: values stay exactly 0
      lo = std::max(x, -Y);
      hi = std::min(-x, Y);
      if (-x > Y) clipped[ix] = 1;
    }
    std::vector<cplx> coarse;
    std::vector<cplx> fine;
    for (int pass = 0; pass < 2; ++pass) {
      const Nodes nodes =
          composite_nodes(lo, hi, options.panel_width / (pass == 0 ? 1.0 : 2.0),
                          options.nodes_per_panel);
      std::vector<cplx> f(nodes.y.size());
      for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = psi(x + nodes.y[i]) * std::conj(psi(x - nodes.y[i]));
      }
      transform_row(nodes, f, grid.p(), pass == 0 ? coarse : fine);
    }
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      values[grid.index(ix, ip)] = fine[ip];
      errors[ix] = std::max(errors[ix], std::abs(fine[ip] - coarse[ip]));
    }
  });

  WignerResult result{core::Field(grid, std::move(values), core::FieldKind::real_expected), 0.0, {}};
  result.error_estimate = *std::max_element(errors.begin(), errors.end());
  if (std::any_of(clipped.begin(), clipped.end(), [](int c) { return c != 0; })) {
    result.warnings.push_back(fmt::format(
        "window half-width {} is smaller than the state support at the left grid edge", Y));
  }
  if (result.error_estimate > 1e-8 * std::max(result.field.sup_norm(), 1e-300)) {
    result.warnings.push_back(fmt::format("quadrature error estimate {:.3e} above 1e-8 relative",
                                          result.error_estimate));
  }
  return result;
}

core::Field wigner_transform_grid(const std::function<cplx(double)>& psi,
                                  const core::PhaseSpaceGrid& grid) {
  return core::inverse_partial_ft_p(core::sample_kernel(psi, grid.x(), grid.p()),
                                    core::FieldKind::complex);
}

}  // namespace starwall::states
