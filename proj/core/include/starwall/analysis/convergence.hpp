#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starwall/core/grid.hpp"
#include "starwall/specfun/meijer_g.hpp"
#include "starwall/states/liouville.hpp"

namespace starwall::analysis {

/// Rectangular sampling window in phase space.
struct Window {
  double x_min = -3.0;
  double x_max = -0.5;
  std::size_t n_x = 26;
  double p_min = -3.0;
  double p_max = 3.0;
  std::size_t n_p = 32;

  core::PhaseSpaceGrid grid() const;
  nlohmann::json to_json() const;
};

struct ConvergenceReport {
  std::vector<double> alphas;
  /// sup |rho_alpha / c - rho_bar| / sup |rho_bar| with c the least-squares scale.
  std::vector<double> distances;
  std::vector<double> scales;
  Window window;
  /// distances strictly decreasing.
  bool monotone = false;
  /// Evaluator warnings, one list per alpha.
  std::vector<std::vector<std::string>> warnings;

  nlohmann::json to_json() const;
  /// alpha,distance,scale
  void write_csv(std::ostream& out) const;
};

/// Distance of rho_alpha to rho_bar on a window inside x < 0, per alpha.
/// Throws ConfigError unless the window lies in x < 0 and alphas are non-decreasing.
ConvergenceReport convergence_study(const std::vector<double>& alphas, double k,
                                    const Window& window = {},
                                    const specfun::MellinBarnesSpec& mb = {},
                                    states::GMethod method = states::GMethod::automatic);

}  // namespace starwall::analysis
