#include "starwall/analysis/convergence.hpp"

#include <ostream>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/fit.hpp"
#include "starwall/states/closed_forms.hpp"

namespace starwall::analysis {

core::PhaseSpaceGrid Window::grid() const {
  return core::make_grid(x_min, x_max, n_x, p_min, p_max, n_p);
}

nlohmann::json Window::to_json() const {
  return {{"x_min", x_min}, {"x_max", x_max}, {"n_x", n_x},
          {"p_min", p_min}, {"p_max", p_max}, {"n_p", n_p}};
}

nlohmann::json ConvergenceReport::to_json() const {
  return {{"alphas", alphas},     {"distances", distances}, {"scales", scales},
          {"window", window.to_json()}, {"monotone", monotone}, {"warnings", warnings}};
}

void ConvergenceReport::write_csv(std::ostream& out) const {
  out << "alpha,distance,scale\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g},{:.17g}\n", alphas[i], distances[i], scales[i]);
  }
}

ConvergenceReport convergence_study(const std::vector<double>& alphas, double k,
                                    const Window& window, const specfun::MellinBarnesSpec& mb,
                                    states::GMethod method) {
  if (alphas.empty()) throw ConfigError("convergence study needs at least one alpha");
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (alphas[i] < alphas[i - 1]) throw ConfigError("convergence study: alphas must not decrease");
  }
  if (!(window.x_max < 0.0)) throw ConfigError("convergence window must lie in x < 0");
  const core::PhaseSpaceGrid grid = window.grid();
  const core::Field reference = core::Field::sample(
      grid, [k](double x, double p) { return states::rho_bar_closed(k, x, p); });

  ConvergenceReport report;
  report.alphas = alphas;
  report.window = window;
  for (double alpha : alphas) {
    const states::LiouvilleEvaluator ev(alpha, k, mb, method);
    std::vector<std::string> warnings;
    const core::Field rho = states::sample_liouville(ev, grid, &warnings);
    const core::ScaleFit fit = core::fit_scale(rho, reference);
    report.distances.push_back(fit.relative_residual);
    report.scales.push_back(fit.scale);
    report.warnings.push_back(std::move(warnings));
  }
  report.monotone = true;
  for (std::size_t i = 1; i < report.distances.size(); ++i) {
    if (!(report.distances[i] < report.distances[i - 1])) report.monotone = false;
  }
  return report;
}

}  // namespace starwall::analysis
