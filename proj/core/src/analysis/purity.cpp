#include "starwall/analysis/purity.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "starwall/core/errors.hpp"
#include "starwall/states/closed_forms.hpp"

namespace starwall::analysis {

nlohmann::json PurityReport::to_json(std::size_t max_singular_values) const {
  const std::size_t n = std::min(max_singular_values, singular_values.size());
  return {{"singular_values",
           std::vector<double>(singular_values.begin(),
                               singular_values.begin() + static_cast<std::ptrdiff_t>(n))},
          {"purity_metric", purity_metric},
          {"window", {{"a_min", window.a_min}, {"a_step", window.a_step}, {"n", window.n}}},
          {"kernel_hermiticity", kernel_hermiticity}};
}

PurityReport purity_check(const core::Field& rho, double a_min, double a_max,
                          core::Interpolation order) {
  const core::KernelField kernel = core::partial_ft_p(rho);
  const core::MatrixWindow window = core::aligned_window(kernel, a_min, a_max);
  if (window.n < 2) throw WindowError("purity window holds fewer than two kernel points");
  const Eigen::MatrixXcd k = core::kernel_to_matrix(kernel, window, order);

  PurityReport report;
  report.window = window;
  const double norm = k.norm();
  report.kernel_hermiticity = norm > 0.0 ? (k - k.adjoint()).norm() / norm : 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(k);
  const Eigen::VectorXd s = svd.singularValues();
  report.singular_values.assign(s.data(), s.data() + s.size());
  report.purity_metric =
      report.singular_values.size() > 1 && report.singular_values[0] > 0.0
          ? report.singular_values[1] / report.singular_values[0]
          : 0.0;
  return report;
}

core::PhaseSpaceGrid interference_grid(double k) {
  if (!(k > 0.0)) throw ConfigError("interference grid needs k > 0");
  constexpr std::size_t kMomenta = 512;
  constexpr std::size_t kPositions = 129;
  const double dp = k / 20.0;
  const double dy = kPi / (static_cast<double>(kMomenta) * dp);
  const double half = static_cast<double>(kPositions / 2) * dy;
  const double p_lo = -static_cast<double>(kMomenta / 2) * dp;
  const double p_hi = static_cast<double>(kMomenta / 2 - 1) * dp;
  return core::make_grid(-half, half, kPositions, p_lo, p_hi, kMomenta);
}

InterferenceScan interference_scan(double a_plus, double a_minus, double k, double phase,
                                   double sigma, const std::vector<double>& moduli,
                                   const core::PhaseSpaceGrid& grid, double a_min, double a_max) {
  if (moduli.empty()) throw ConfigError("interference scan needs at least one modulus");
  InterferenceScan scan;
  scan.moduli = moduli;
  scan.pure_modulus = std::sqrt(a_plus * a_minus);
  for (double m : moduli) {
    const cplx b = std::polar(m, phase);
    const core::Field rho = core::Field::sample(grid, [&](double x, double p) {
      return states::rho_free_family(a_plus, a_minus, b, k, sigma, x, p);
    });
    scan.metrics.push_back(purity_check(rho, a_min, a_max).purity_metric);
  }
  scan.argmin = static_cast<std::size_t>(
      std::min_element(scan.metrics.begin(), scan.metrics.end()) - scan.metrics.begin());
  return scan;
}

}  // namespace starwall::analysis
