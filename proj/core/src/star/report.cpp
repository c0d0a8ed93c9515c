#include "starwall/star/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace starwall::star {

double ResidualReport::ratio() const {
  if (reference_scale == 0.0) return sup_norm == 0.0 ? 0.0 : INFINITY;
  return sup_norm / reference_scale;
}

nlohmann::json ResidualReport::to_json() const {
  nlohmann::json j;
  j["equation_id"] = equation_id;
  j["sup_norm"] = sup_norm;
  j["l2_norm"] = l2_norm;
  j["reference_scale"] = reference_scale;
  j["tolerance"] = tolerance;
  j["ratio"] = ratio();
  j["verdict"] = pass ? "pass" : "fail";
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& pt : points) {
    nlohmann::json e{{"x", pt.x}, {"p", pt.p}, {"re", pt.value.real()}, {"im", pt.value.imag()}};
    if (!pt.component.empty()) e["component"] = pt.component;
    pts.push_back(std::move(e));
  }
  j["points"] = std::move(pts);
  nlohmann::json diag = nlohmann::json::object();
  for (const auto& [name, value] : diagnostics) diag[name] = value;
  j["diagnostics"] = std::move(diag);
  j["warnings"] = warnings;
  return j;
}

void finalize_from_points(ResidualReport& report) {
  double sup = 0.0;
  double sum = 0.0;
  for (const auto& pt : report.points) {
    const double a = std::abs(pt.value);
    sup = std::max(sup, a);
    sum += a * a;
  }
  report.sup_norm = sup;
  report.l2_norm = std::sqrt(sum);
  report.pass = report.ratio() < report.tolerance;
}

std::vector<ResidualPoint> largest_points(const core::Field& field, std::size_t count,
                                          const std::string& component) {
  const auto values = field.values();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  count = std::min(count, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = std::abs(values[a]);
                      const double vb = std::abs(values[b]);
                      return va != vb ? va > vb : a < b;
                    });
  const auto& grid = field.grid();
  std::vector<ResidualPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = order[i];
    const std::size_t ix = idx / grid.p().size();
    const std::size_t ip = idx % grid.p().size();
    out.push_back({grid.x().at(ix), grid.p().at(ip), values[idx], component});
  }
  return out;
}

void merge_warnings(std::vector<std::string>& into, const std::vector<std::string>& from) {
  into.insert(into.end(), from.begin(), from.end());
  std::sort(into.begin(), into.end());
  into.erase(std::unique(into.begin(), into.end()), into.end());
}

}  // namespace starwall::star
