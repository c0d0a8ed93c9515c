#include "starwall/analysis/suppression.hpp"

#include <algorithm>
#include <mutex>
#include <ostream>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/parallel.hpp"

namespace starwall::analysis {

nlohmann::json SuppressionReport::to_json() const {
  return {{"alphas", alphas},         {"x_pos", x_pos},          {"p_samples", p_samples},
          {"ratios", ratios},         {"max_inside", max_inside}, {"max_outside", max_outside},
          {"underflow", underflow},   {"decreasing", decreasing}, {"warnings", warnings}};
}

void SuppressionReport::write_csv(std::ostream& out) const {
  out << "alpha,ratio,max_outside,max_inside,underflow\n";
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{}\n", alphas[i], ratios[i], max_outside[i],
                       max_inside[i], underflow[i] ? 1 : 0);
  }
}

std::vector<double> default_p_samples() {
  std::vector<double> p(25);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = -3.0 + 0.25 * static_cast<double>(i);
  return p;
}

SuppressionReport wall_suppression_study(const std::vector<double>& alphas, double k, double x_pos,
                                         const std::vector<double>& p_samples,
                                         const specfun::MellinBarnesSpec& mb,
                                         states::GMethod method) {
  if (!(x_pos > 0.0)) throw ConfigError("suppression study needs x_pos > 0");
  if (p_samples.empty()) throw ConfigError("suppression study needs momentum samples");
  if (alphas.empty()) throw ConfigError("suppression study needs at least one alpha");

  SuppressionReport report;
  report.alphas = alphas;
  report.x_pos = x_pos;
  report.p_samples = p_samples;
  for (double alpha : alphas) {
    const states::LiouvilleEvaluator ev(alpha, k, mb, method);
    const std::size_t n = p_samples.size();
    std::vector<double> outside(n);
    std::vector<double> inside(n);
    std::vector<double> floor(n);
    std::vector<std::vector<std::string>> warnings(n);
    core::parallel_for(n, [&](std::size_t i) {
      const auto out = ev.evaluate(x_pos, p_samples[i]);
      const auto in = ev.evaluate(-x_pos, p_samples[i]);
      outside[i] = std::abs(out.value());
      floor[i] = out.noise_floor;
      inside[i] = std::abs(in.value());
      warnings[i] = out.warnings;
      warnings[i].insert(warnings[i].end(), in.warnings.begin(), in.warnings.end());
    });
    const double max_out = *std::max_element(outside.begin(), outside.end());
    const double max_in = *std::max_element(inside.begin(), inside.end());
    const double max_floor = *std::max_element(floor.begin(), floor.end());
    const bool under = !(max_out > 10.0 * max_floor) || max_out == 0.0;
    report.max_outside.push_back(max_out);
    report.max_inside.push_back(max_in);
    report.underflow.push_back(under);
    report.ratios.push_back(under || max_in == 0.0 ? 0.0 : max_out / max_in);
    std::vector<std::string> merged;
    for (auto& w : warnings) merged.insert(merged.end(), w.begin(), w.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    report.warnings.push_back(std::move(merged));
  }
  report.decreasing = true;
  for (std::size_t i = 1; i < report.ratios.size(); ++i) {
    const bool both_under = report.underflow[i] && report.underflow[i - 1];
    if (!(report.ratios[i] < report.ratios[i - 1]) && !both_under) report.decreasing = false;
  }
  return report;
}

}  // namespace starwall::analysis
