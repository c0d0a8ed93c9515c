// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli.hpp"
#include "starwall/analysis/convergence.hpp"
#include "starwall/analysis/free_family.hpp"
#include "starwall/analysis/purity.hpp"
#include "starwall/analysis/robin.hpp"
#include "starwall/analysis/suppression.hpp"
#include "starwall/core/fit.hpp"
#include "starwall/core/quadrature.hpp"
#include "starwall/star/residuals.hpp"
#include "starwall/states/closed_forms.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

using namespace starwall;
using namespace std::complex_literals;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

core::Field rho_bar_field(const core::PhaseSpaceGrid& g) {
  return core::Field::sample(g, [](double x, double p) { return states::rho_bar_closed(1.0, x, p); });
}

Outcome wall_consistency() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = core::make_grid(-5.0, -0.1, 101, -5.0, 5.0, 101);
  states::WignerOptions options;
  options.support = states::Support::half_line;
  const auto numeric =
      states::wigner_transform_numeric([](double x) { return cplx(states::psi_wall(1.0, x)); }, g, options);
  const auto fit = core::fit_scale(numeric.field, rho_bar_field(g));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {fit.relative_residual < 1e-8 && seconds <= 60.0,
          fmt::format("numeric Wigner transform of the wall state vs closed form: sup rel err {:.2e} (< 1e-8), "
                      "scale {:.15f}, {:.1f} s (<= 60 s)",
                      fit.relative_residual, fit.scale, seconds)};
}

Outcome free_equation_fails() {
  const auto r = star::genvalue_residual_free(rho_bar_field(core::default_grid()), 1.0);
  const auto dir = std::filesystem::temp_directory_path() / "starwall_acceptance";
  std::ostringstream out, err;
  const int code = cli::main_entry({"starwall", "check", "eq4", "--state", "wall", "--k", "1", "--output", dir.string()},
                                   out, err);
  return {r.ratio() > 0.5 && !r.pass && code == 1,
          fmt::format("free genvalue equation on the wall function: residual/scale {:.3e} (> 0.5), CLI exit {} (== 1)",
                      r.ratio(), code)};
}

Outcome fourth_order_and_lr_star() {
  const auto g = core::default_grid();
  const auto fourth = star::fourth_order_residual(star::rho_bar_operand(1.0), 1.0, g);
  const auto lr = star::lr_star_residual(rho_bar_field(g), 1.0);
  return {fourth.ratio() < 1e-8 && lr.ratio() < 1e-5,
          fmt::format("fourth-order equation (analytic, x < 0): {:.3e} (< 1e-8); windowed left-right star "
                      "product on x in [{:.2f}, {:.2f}]: {:.3e} (< 1e-5)",
                      fourth.ratio(), lr.diagnostics.at("interior_min"), lr.diagnostics.at("interior_max"), lr.ratio())};
}

Outcome liouville_identities() {
  bool pass = true;
  std::string parts;
  const auto points = star::liouville_sample(1.0);
  for (double alpha : {1.0, 2.0, 4.0}) {
    const states::LiouvilleEvaluator ev(alpha, 1.0);
    const auto g = star::genvalue_residual_liouville(ev, points);
    const auto d = star::difference_eq_residual(ev, points);
    const auto printed = star::difference_eq_residual(ev, points, star::DifferenceVariant::as_printed);
    const double gap = printed.ratio() / std::max(d.ratio(), 1e-300);
    pass = pass && g.ratio() < 1e-6 && d.ratio() < 1e-6 && gap >= 1e3;
    parts += fmt::format("{}alpha {}: {:.1e}/{:.1e}, uncorrected x{:.1e}", parts.empty() ? "" : "; ", alpha,
                         g.ratio(), d.ratio(), gap);
  }
  return {pass, fmt::format("genvalue pair / difference equation, 25 points (< 1e-6, uncorrected >= 1e3 x): {}", parts)};
}

Outcome cross_method() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto points = star::liouville_sample(1.0);
  double g_worst = 0.0;
  for (double alpha : {1.0, 2.0, 4.0}) {
    const states::LiouvilleEvaluator series(alpha, 1.0, {}, states::GMethod::series);
    const states::LiouvilleEvaluator contour(alpha, 1.0, {}, states::GMethod::contour);
    for (const auto& pt : points) {
      const cplx a = series(pt.x, pt.p), b = contour(pt.x, pt.p);
      g_worst = std::max(g_worst, std::abs(a - b) / std::abs(a));
    }
  }
  const states::LiouvilleEvaluator ev(1.0, 1.0);
  std::vector<cplx> mb, wigner;
  for (const auto& pt : points) {
    const auto integrand = [&](double y) {
      return std::cos(2 * pt.p * y) * states::psi_liouville(1.0, 1.0, pt.x + y) *
             states::psi_liouville(1.0, 1.0, pt.x - y);
    };
    wigner.emplace_back(2.0 / kPi * core::integrate_panels(integrand, 0.0, 10.0, 40, 24));
    mb.push_back(ev(pt.x, pt.p));
  }
  const auto fit = core::fit_scale(mb, wigner);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {g_worst < 1e-8 && fit.relative_residual < 1e-5 && seconds <= 300.0,
          fmt::format("contour vs residue series: max rel diff {:.2e} (< 1e-8); Mellin-Barnes vs Bessel-K Wigner "
                      "transform: rel err {:.2e} (< 1e-5), scale {:.6f} = 8 pi x {:.15f}; {:.1f} s (<= 300 s)",
                      g_worst, fit.relative_residual, fit.scale, fit.scale / (8 * kPi), seconds)};
}

Outcome limit_claim() {
  const std::vector<double> alphas{2.0, 4.0, 8.0, 16.0};
  const auto c = analysis::convergence_study(alphas, 1.0);
  const auto s = analysis::wall_suppression_study(alphas, 1.0, 0.5);
  std::string d, r;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    d += fmt::format("{}{:.4f}", i ? ", " : "", c.distances[i]);
    r += fmt::format("{}{:.3e}{}", i ? ", " : "", s.ratios[i], s.underflow[i] ? " (underflow)" : "");
  }
  return {c.monotone && s.decreasing,
          fmt::format("alpha = 2,4,8,16: distance to wall function [{}] strictly decreasing: {}; suppression at "
                      "x = 0.5 [{}] strictly decreasing: {}",
                      d, c.monotone ? "yes" : "no", r, s.decreasing ? "yes" : "no")};
}

Outcome effective_mass() {
  const states::LiouvilleEvaluator ev(2.0, 1.0);
  const double avoid[] = {0.0, 1.0, -1.0};
  const auto points = star::stratified_sample(-2.0, 0.3, -2.0, 2.0, 25, 20240611, avoid);
  const auto r = star::effective_mass_residual(ev, star::ShiftBranch::complex_shift, points);
  const double defect = r.diagnostics.at("identity_defect");
  return {defect < 1e-10 && r.ratio() < 1e-6,
          fmt::format("complex coordinate shift, alpha 2, k 1: shifted vs unshifted residual defect {:.2e} "
                      "(< 1e-10), residual/scale {:.2e} (< 1e-6)",
                      defect, r.ratio())};
}

Outcome purity() {
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8.0, 8.0, 513, -127.5 * dp, 127.5 * dp, 256);
  struct Case {
    std::string name;
    std::function<cplx(double)> psi;
    double a_min, a_max;
  };
  const std::vector<Case> cases{
      {"wall", [](double x) { return cplx(states::psi_wall(1.0, x)); }, -6.0, -1.0},
      {"robin L=1", [](double x) { return cplx(states::psi_robin(1.0, 1.0, x)); }, -6.0, -1.0},
      {"liouville", states::tabulated_liouville(1.0, 1.0, -30.0, 30.0), -6.0, 1.0},
      {"oscillator", [](double x) { return cplx(std::exp(-x * x / 2) * (1.0 + 0.5i * x)); }, -3.0, 3.0},
  };
  bool pass = true;
  std::string parts;
  for (const auto& c : cases) {
    const auto r = analysis::purity_check(states::wigner_transform_grid(c.psi, g), c.a_min, c.a_max);
    pass = pass && r.purity_metric < 1e-8;
    parts += fmt::format("{}{} {:.1e}", parts.empty() ? "" : ", ", c.name, r.purity_metric);
  }
  const double a_plus = 1.0, a_minus = 0.49, pure = 0.7;
  std::vector<double> moduli;
  for (int i = 0; i <= 20; ++i) moduli.push_back(pure * (0.5 + 0.05 * i));
  const auto scan =
      analysis::interference_scan(a_plus, a_minus, 1.0, 0.4, 0.05, moduli, analysis::interference_grid(1.0), -2.0, 2.0);
  const double step = 0.05 * pure;
  const bool scan_ok = std::abs(scan.moduli[scan.argmin] - pure) <= 0.5 * step;
  return {pass && scan_ok,
          fmt::format("s2/s1 for single states (< 1e-8): {}; |b| scan minimum at {:.4f}, pure value {:.4f} "
                      "(grid step {:.3f})",
                      parts, scan.moduli[scan.argmin], pure, step)};
}

Outcome free_correspondence() {
  states::StateSpec s;
  s.family = states::Family::free_superposition;
  s.amp_minus = cplx(0.6, 0.3);
  const auto g = core::make_grid(-1.0, 1.0, 21, -2.0, 2.0, 81);
  const auto r = analysis::free_correspondence(s, {20.0, 40.0, 80.0}, g);
  const bool improving = r[0].relative_error > r[1].relative_error && r[1].relative_error > r[2].relative_error;
  return {r[1].relative_error < 1e-3 && improving,
          fmt::format("regularized closed form vs Gaussian-envelope transform: Lambda 20/40/80 -> "
                      "{:.2e}/{:.2e}/{:.2e} (< 1e-3 at 40, decreasing)",
                      r[0].relative_error, r[1].relative_error, r[2].relative_error)};
}

Outcome robin_family() {
  const auto r = analysis::robin_scan({0.0, 0.5, 1.0, 2.0}, 1.0);
  bool bulk = true;
  for (const auto& e : r.entries) bulk = bulk && e.fourth_order.pass;
  const auto& wall = r.entries[0];
  const auto& one = r.entries[2];
  double slope = 0.0;
  for (double v : one.boundary_slope) slope = std::max(slope, std::abs(v));
  const bool profile = slope > 1e-3 * one.slope_scale;
  return {wall.wall_defect < 1e-10 && profile && bulk,
          fmt::format("L = 0 vs wall: {:.1e} (< 1e-10); L = 1 boundary slope max {:.4f} (non-vanishing); "
                      "fourth-order bulk check for L = 0, 0.5, 1, 2: {}",
                      wall.wall_defect, slope, bulk ? "all pass" : "failures")};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{
      wall_consistency, free_equation_fails, fourth_order_and_lr_star, liouville_identities, cross_method,
      limit_claim,      effective_mass,      purity,                   free_correspondence,  robin_family};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    if (!o.pass) ++failures;
    fmt::print("criterion {:>2} {}  {}\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria pass\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
