#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace starwall::core {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, cached per n (thread-safe).
const GaussRule& gauss_legendre(std::size_t n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels of an
/// n-point rule. Works for any f whose result supports += and * double.
template <class Fn>
auto integrate_panels(Fn&& f, double a, double b, std::size_t panels, std::size_t n) {
  const GaussRule& rule = gauss_legendre(n);
  const double width = (b - a) / static_cast<double>(panels);
  using Result = decltype(f(a));
  Result sum{};
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = a + (static_cast<double>(k) + 0.5) * width;
    Result panel{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
    }
    sum += 0.5 * width * panel;
  }
  return sum;
}

}  // namespace starwall::core
