#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "starwall/specfun/meijer_g.hpp"
#include "starwall/states/liouville.hpp"

namespace starwall::analysis {

struct SuppressionReport {
  std::vector<double> alphas;
  double x_pos = 0.0;
  std::vector<double> p_samples;
  /// max_p |rho_alpha(x_pos, p)| / max_p |rho_alpha(-x_pos, p)|.
  std::vector<double> ratios;
  std::vector<double> max_inside;
  std::vector<double> max_outside;
  /// Set when max_p |rho_alpha(x_pos, p)| is not above ten times the
  /// evaluator's rounding floor; the ratio is then reported as 0.
  std::vector<bool> underflow;
  /// Each ratio below the previous one; two consecutive underflows count as decreasing.
  bool decreasing = false;
  std::vector<std::vector<std::string>> warnings;

  nlohmann::json to_json() const;
  /// alpha,ratio,max_outside,max_inside,underflow
  void write_csv(std::ostream& out) const;
};

/// 25 equally spaced momenta in [-3, 3].
std::vector<double> default_p_samples();

/// Throws ConfigError for x_pos <= 0 or an empty p sample.
SuppressionReport wall_suppression_study(const std::vector<double>& alphas, double k, double x_pos,
                                         const std::vector<double>& p_samples = default_p_samples(),
                                         const specfun::MellinBarnesSpec& mb = {},
                                         states::GMethod method = states::GMethod::automatic);

}  // namespace starwall::analysis
