#include "starwall/analysis/robin.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/star/operands.hpp"
#include "starwall/star/residuals.hpp"
#include "starwall/states/closed_forms.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

namespace starwall::analysis {

namespace {

constexpr double kSlopeStep = 1e-5;

states::WignerOptions half_line_options(const core::PhaseSpaceGrid& grid) {
  states::WignerOptions options;
  options.support = states::Support::half_line;
  options.window_half_width = std::max(10.0, std::abs(grid.x().min()) + 1.0);
  return options;
}

}  // namespace

nlohmann::json RobinReport::to_json() const {
  nlohmann::json entries_json = nlohmann::json::array();
  for (const auto& e : entries) {
    entries_json.push_back({{"L", e.L},
                            {"phase", e.phase},
                            {"closed_form_defect", e.closed_form_defect},
                            {"field_scale", e.field_scale},
                            {"boundary_value_max", e.boundary_value_max},
                            {"boundary_slope", e.boundary_slope},
                            {"boundary_slope_numeric", e.boundary_slope_numeric},
                            {"slope_scale", e.slope_scale},
                            {"wall_defect", e.wall_defect},
                            {"fourth_order", e.fourth_order.to_json()}});
  }
  return {{"k", k}, {"p_values", p_values}, {"entries", std::move(entries_json)}};
}

void RobinReport::write_csv(std::ostream& out) const {
  out << "L,p,boundary_value,boundary_slope,boundary_slope_numeric\n";
  for (const auto& e : entries) {
    for (std::size_t i = 0; i < p_values.size(); ++i) {
      out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", e.L, p_values[i], 0.0,
                         e.boundary_slope[i], e.boundary_slope_numeric[i]);
    }
  }
}

core::PhaseSpaceGrid default_robin_grid() { return core::make_grid(-4.0, 0.0, 81, -4.0, 4.0, 81); }

RobinReport robin_scan(const std::vector<double>& L_values, double k,
                       const core::PhaseSpaceGrid& grid) {
  if (!(k > 0.0)) throw ConfigError("robin scan needs k > 0");
  if (L_values.empty()) throw ConfigError("robin scan needs at least one L");
  const states::WignerOptions options = half_line_options(grid);
  const core::Field wall =
      states::wigner_transform_numeric([k](double x) { return cplx(states::psi_wall(k, x)); }, grid,
                                       options)
          .field;

  RobinReport report;
  report.k = k;
  for (std::size_t ip = 0; ip < grid.p().size(); ++ip) report.p_values.push_back(grid.p().at(ip));
  const core::PhaseSpaceGrid boundary_grid =
      core::make_grid(-2.0 * kSlopeStep, -kSlopeStep, 2, grid.p().min(), grid.p().max(),
                      grid.p().size());

  for (double L : L_values) {
    RobinEntry e;
    e.L = L;
    e.phase = states::robin_phase(k, L);
    const auto psi = [k, L](double x) { return cplx(states::psi_robin(k, L, x)); };
    const core::Field rho = states::wigner_transform_numeric(psi, grid, options).field;
    const double phase = e.phase;
    const auto closed_at = [k, phase](double x, double p, int order) {
      return -states::half_line_rho(k, phase, x, p, order) / (2.0 * kPi);
    };
    const core::Field closed = core::Field::sample(
        grid, [&](double x, double p) { return x < 0.0 ? closed_at(x, p, 0) : 0.0; });

    e.field_scale = rho.sup_norm();
    double diff = 0.0;
    double wall_diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      diff = std::max(diff, std::abs(rho.values()[i] - closed.values()[i]));
      wall_diff = std::max(wall_diff, std::abs(rho.values()[i] - wall.values()[i]));
    }
    e.closed_form_defect = diff / closed.sup_norm();
    e.wall_defect = wall_diff / e.field_scale;

    // The last x-row at or above 0 is the boundary row.
    for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
      if (grid.x().at(ix) < 0.0) continue;
      for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
        e.boundary_value_max = std::max(e.boundary_value_max, std::abs(rho(ix, ip)));
      }
      break;
    }
    const core::Field near = states::wigner_transform_numeric(psi, boundary_grid, options).field;
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const double p = grid.p().at(ip);
      e.boundary_slope.push_back(closed_at(0.0, p, 1));
      e.boundary_slope_numeric.push_back(-near(1, ip).real() / kSlopeStep);
    }
    for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
      const double x = grid.x().at(ix);
      if (!(x < 0.0)) continue;
      for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
        e.slope_scale = std::max(e.slope_scale, std::abs(closed_at(x, grid.p().at(ip), 1)));
      }
    }
    e.fourth_order = star::fourth_order_residual(
        star::StarOperand(star::half_line_operand(k, phase)), k, grid);
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace starwall::analysis
