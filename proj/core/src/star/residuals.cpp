#include "starwall/star/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/parallel.hpp"
#include "starwall/core/transforms.hpp"
#include "starwall/star/star_product.hpp"

namespace starwall::star {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr std::size_t kReportedGridPoints = 16;

struct PointEval {
  std::vector<ResidualPoint> residuals;
  double scale = 0.0;
  std::vector<std::string> warnings;
  double defect = 0.0;
};

// Runs fn on every point in parallel and gathers the results in point order.
template <class Fn>
ResidualReport collect(const std::string& id, std::size_t n, double tolerance, bool with_defect,
                       Fn&& fn) {
  std::vector<PointEval> evals(n);
  core::parallel_for(n, [&](std::size_t i) { evals[i] = fn(i); });
  ResidualReport report;
  report.equation_id = id;
  report.tolerance = tolerance;
  double defect = 0.0;
  for (auto& e : evals) {
    report.points.insert(report.points.end(), e.residuals.begin(), e.residuals.end());
    report.reference_scale = std::max(report.reference_scale, e.scale);
    merge_warnings(report.warnings, e.warnings);
    defect = std::max(defect, e.defect);
  }
  finalize_from_points(report);
  if (with_defect && report.reference_scale > 0.0) {
    report.diagnostics["identity_defect"] = defect / report.reference_scale;
  }
  return report;
}

void require_nonzero_p(double p) {
  if (p == 0.0) throw ExcludedSampleError("sample point at p = 0 (1/p coefficient)");
}

double quartic_coefficient(double p, double k, QuarticCoefficient c) {
  if (c == QuarticCoefficient::expanded) return (p * p - k * k) * (p * p - k * k);
  return p * p * p * p - 2.0 * k * k * p + k * k * k * k;
}

void finalize_masked_field(ResidualReport& report, const core::Field& rho,
                           const core::Field& residual) {
  const auto& grid = residual.grid();
  double sup = 0.0;
  double sum = 0.0;
  double scale = 0.0;
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    if (!(grid.x().at(ix) < 0.0)) continue;
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const double a = std::abs(residual(ix, ip));
      sup = std::max(sup, a);
      sum += a * a;
      scale = std::max(scale, std::abs(rho(ix, ip)));
    }
  }
  report.sup_norm = sup;
  report.l2_norm = std::sqrt(sum * grid.x().step() * grid.p().step());
  report.reference_scale = scale;
  report.pass = report.ratio() < report.tolerance;
  report.points = largest_points(residual, kReportedGridPoints);
  report.residual_field = residual;
}

}  // namespace

std::vector<SamplePoint> stratified_sample(double x_min, double x_max, double p_min, double p_max,
                                           std::size_t n, std::uint64_t seed,
                                           std::span<const double> avoid_p, double p_gap) {
  if (!(x_max > x_min) || !(p_max > p_min) || n == 0) {
    throw ConfigError("sample rectangle must be non-empty and n > 0");
  }
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double hx = (x_max - x_min) / static_cast<double>(side);
  const double hp = (p_max - p_min) / static_cast<double>(side);
  std::vector<SamplePoint> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t sx = s / side;
    const std::size_t sp = s % side;
    SamplePoint pt{};
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      pt.x = x_min + (static_cast<double>(sx) + unit(rng)) * hx;
      pt.p = p_min + (static_cast<double>(sp) + unit(rng)) * hp;
      ok = std::none_of(avoid_p.begin(), avoid_p.end(),
                        [&](double a) { return std::abs(pt.p - a) < p_gap; });
    }
    if (!ok) throw ConfigError("sample stratum lies entirely inside an excluded momentum band");
    out.push_back(pt);
  }
  return out;
}

std::vector<SamplePoint> liouville_sample(double k, std::size_t n, std::uint64_t seed) {
  const double avoid[] = {0.0, k, -k};
  return stratified_sample(-2.0, 0.5, -2.0, 2.0, n, seed, avoid);
}

ResidualReport genvalue_residual_free(const core::Field& rho, double k, double tolerance) {
  const auto& grid = rho.grid();
  const core::Field d1 = core::x_derivative(rho, 1);
  const core::Field d2 = core::x_derivative(rho, 2);
  std::vector<cplx> r(grid.size());
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const double p = grid.p().at(ip);
      const std::size_t i = grid.index(ix, ip);
      r[i] = (p * p - k * k) * rho.values()[i] - kI * p * d1.values()[i] - 0.25 * d2.values()[i];
    }
  }
  core::Field residual(grid, std::move(r), core::FieldKind::complex);

  ResidualReport report;
  report.equation_id = "eq4";
  report.tolerance = tolerance;
  report.sup_norm = residual.sup_norm();
  report.l2_norm = residual.l2_norm();
  report.reference_scale = rho.sup_norm();
  report.pass = report.ratio() < tolerance;
  report.points = largest_points(residual, kReportedGridPoints);

  const core::Field bopp = star_left({-k * k, 0.0, 1.0}, rho);
  double im_defect = 0.0;
  double route_defect = 0.0;
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const std::size_t i = grid.index(ix, ip);
      const double p = grid.p().at(ip);
      im_defect = std::max(im_defect, std::abs(bopp.values()[i].imag() + p * d1.values()[i].real()));
      route_defect = std::max(route_defect, std::abs(bopp.values()[i] - residual.values()[i]));
    }
  }
  if (report.reference_scale > 0.0) {
    report.diagnostics["imaginary_part_defect"] = im_defect / report.reference_scale;
    report.diagnostics["bopp_route_defect"] = route_defect / report.reference_scale;
  }
  if (edge_decay_ratio(rho) > 1e-6) {
    report.warnings.push_back("rho does not decay at the window edges; spectral x-derivatives ring there");
  }
  report.residual_field = std::move(residual);
  return report;
}

ResidualReport genvalue_residual_liouville(const states::LiouvilleEvaluator& ev,
                                           std::span<const SamplePoint> points, double tolerance) {
  for (const auto& pt : points) require_nonzero_p(pt.p);
  const double a = ev.alpha();
  const double k = ev.k();
  return collect("eq24", points.size(), tolerance, false, [&](std::size_t i) {
    const SamplePoint pt = points[i];
    const auto v0 = ev.evaluate(pt.x, pt.p, 2);
    const auto vp = ev.evaluate(pt.x, cplx(pt.p, a));
    const auto vm = ev.evaluate(pt.x, cplx(pt.p, -a));
    const cplx rho = v0.derivatives[0];
    const cplx e = std::exp(2.0 * a * pt.x);
    const cplx im_line = v0.derivatives[1] + kI / (2.0 * pt.p) * e * (vp.value() - vm.value());
    const cplx re_line = (pt.p * pt.p - k * k) * rho - 0.25 * v0.derivatives[2] +
                         0.5 * e * (vp.value() + vm.value());
    PointEval out;
    out.residuals = {{pt.x, pt.p, im_line, "imaginary"}, {pt.x, pt.p, re_line, "real"}};
    out.scale = std::abs(rho);
    for (const auto* v : {&v0, &vp, &vm}) merge_warnings(out.warnings, v->warnings);
    return out;
  });
}

ResidualReport difference_eq_residual(const states::LiouvilleEvaluator& ev,
                                      std::span<const SamplePoint> points,
                                      DifferenceVariant variant, double tolerance) {
  for (const auto& pt : points) require_nonzero_p(pt.p);
  const double a = ev.alpha();
  const double k = ev.k();
  const cplx odd = variant == DifferenceVariant::derived ? cplx(0.0, a) : cplx(0.0, -1.0);
  const std::string id = variant == DifferenceVariant::derived ? "eq25" : "eq25_as_printed";
  return collect(id, points.size(), tolerance, false, [&](std::size_t i) {
    const SamplePoint pt = points[i];
    const cplx p(pt.p, 0.0);
    const auto r0 = ev.evaluate(pt.x, p);
    const auto rp = ev.evaluate(pt.x, p + kI * a);
    const auto rm = ev.evaluate(pt.x, p - kI * a);
    const auto rpp = ev.evaluate(pt.x, p + 2.0 * kI * a);
    const auto rmm = ev.evaluate(pt.x, p - 2.0 * kI * a);
    const cplx rho = r0.value();
    const double e = std::exp(2.0 * a * pt.x);
    const cplx quad = (1.0 / p) * (e / 4.0) * (e / 4.0) *
                      ((rpp.value() - rho) / (p + kI * a) + (rmm.value() - rho) / (p - kI * a));
    const cplx value = (p * p - k * k) * rho + quad +
                       odd * e / (4.0 * p) * (rp.value() - rm.value()) +
                       0.5 * e * (rp.value() + rm.value());
    PointEval out;
    out.residuals = {{pt.x, pt.p, value, {}}};
    out.scale = std::abs(rho);
    for (const auto* v : {&r0, &rp, &rm, &rpp, &rmm}) merge_warnings(out.warnings, v->warnings);
    return out;
  });
}

ResidualReport fourth_order_residual(const core::Field& rho, double k,
                                     const FourthOrderOptions& options) {
  const auto& grid = rho.grid();
  const core::Field d2 = core::x_derivative(rho, 2);
  const core::Field d4 = core::x_derivative(rho, 4);
  std::vector<cplx> r(grid.size(), cplx{});
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    if (!(grid.x().at(ix) < 0.0)) continue;
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const double p = grid.p().at(ip);
      const std::size_t i = grid.index(ix, ip);
      r[i] = d4.values()[i] / 16.0 + (p * p + k * k) * d2.values()[i] / 2.0 +
             quartic_coefficient(p, k, options.coefficient) * rho.values()[i];
    }
  }
  ResidualReport report;
  report.equation_id = options.coefficient == QuarticCoefficient::expanded ? "eq26" : "eq26_as_printed";
  report.tolerance = options.tolerance;
  finalize_masked_field(report, rho, core::Field(grid, std::move(r), core::FieldKind::complex));
  if (edge_decay_ratio(rho) > 1e-6) {
    report.warnings.push_back("rho does not decay at the window edges; spectral x-derivatives ring there");
  }
  return report;
}

ResidualReport fourth_order_residual(const AnalyticOperand& rho, double k,
                                     const core::PhaseSpaceGrid& grid,
                                     const FourthOrderOptions& options) {
  std::vector<cplx> values(grid.size(), cplx{});
  std::vector<cplx> r(grid.size(), cplx{});
  core::parallel_for(grid.x().size(), [&](std::size_t ix) {
    const double x = grid.x().at(ix);
    if (!(x < 0.0)) return;
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const double p = grid.p().at(ip);
      const std::size_t i = grid.index(ix, ip);
      const cplx f = rho.eval(x, p, 0);
      values[i] = f;
      r[i] = rho.eval(x, p, 4) / 16.0 + (p * p + k * k) * rho.eval(x, p, 2) / 2.0 +
             quartic_coefficient(p, k, options.coefficient) * f;
    }
  });
  ResidualReport report;
  report.equation_id = options.coefficient == QuarticCoefficient::expanded ? "eq26" : "eq26_as_printed";
  report.tolerance = options.tolerance;
  finalize_masked_field(report, core::Field(grid, std::move(values), core::FieldKind::complex),
                        core::Field(grid, std::move(r), core::FieldKind::complex));
  return report;
}

ResidualReport fourth_order_residual(const StarOperand& rho, double k,
                                     const core::PhaseSpaceGrid& grid,
                                     const FourthOrderOptions& options) {
  if (const auto* f = std::get_if<core::Field>(&rho)) return fourth_order_residual(*f, k, options);
  return fourth_order_residual(std::get<AnalyticOperand>(rho), k, grid, options);
}

std::pair<double, double> lr_star_interior(const core::PhaseSpaceGrid& grid,
                                           const LrStarOptions& options) {
  const double lo = options.cutoff_min.value_or(grid.x().min());
  const double hi = options.cutoff_max.value_or(-0.2);
  if (!(hi > lo)) throw ConfigError("lr_star cutoff window is empty");
  const double taper = options.taper_fraction * (hi - lo);
  return {lo + taper, hi - taper};
}

ResidualReport lr_star_residual(const core::Field& rho, double energy, const LrStarOptions& options) {
  const auto& grid = rho.grid();
  const double lo = options.cutoff_min.value_or(grid.x().min());
  const double hi = options.cutoff_max.value_or(-0.2);
  const auto [in_lo, in_hi] = lr_star_interior(grid, options);
  const core::Field windowed = apply_x_cutoff(rho, lo, hi, options.taper_fraction);
  const PPolynomial h{-energy, 0.0, 1.0};
  const core::Field residual = star_right(star_left(h, windowed), h);

  ResidualReport report;
  report.equation_id = "eq27";
  report.tolerance = options.tolerance;
  double sup = 0.0;
  double sum = 0.0;
  double scale = 0.0;
  std::vector<cplx> interior(grid.size(), cplx{});
  for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
    const double x = grid.x().at(ix);
    if (x < in_lo || x > in_hi) continue;
    for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
      const std::size_t i = grid.index(ix, ip);
      interior[i] = residual.values()[i];
      const double a = std::abs(interior[i]);
      sup = std::max(sup, a);
      sum += a * a;
      scale = std::max(scale, std::abs(rho.values()[i]));
    }
  }
  report.sup_norm = sup;
  report.l2_norm = std::sqrt(sum * grid.x().step() * grid.p().step());
  report.reference_scale = scale;
  report.pass = report.ratio() < report.tolerance;
  report.points = largest_points(core::Field(grid, std::move(interior), core::FieldKind::complex),
                                 kReportedGridPoints);
  report.diagnostics["interior_min"] = in_lo;
  report.diagnostics["interior_max"] = in_hi;
  const double edge = edge_decay_ratio(windowed);
  report.diagnostics["edge_decay"] = edge;
  // Only the x edges matter: Bopp shifts differentiate in x alone.
  double x_edge = 0.0;
  for (std::size_t ip = 0; ip < grid.p().size(); ++ip) {
    x_edge = std::max({x_edge, std::abs(windowed(0, ip)), std::abs(windowed(grid.x().size() - 1, ip))});
  }
  if (windowed.sup_norm() > 0.0 && x_edge > 1e-6 * windowed.sup_norm()) {
    report.warnings.push_back("cutoff leaves rho non-negligible at the x edges of the grid");
  }
  report.residual_field = residual;
  return report;
}

std::string_view to_string(ShiftBranch branch) {
  return branch == ShiftBranch::complex_shift ? "complex-shift" : "real-shift";
}

ShiftBranch shift_branch_from_string(std::string_view name) {
  if (name == "complex-shift" || name == "complex") return ShiftBranch::complex_shift;
  if (name == "real-shift" || name == "real") return ShiftBranch::real_shift;
  throw ConfigError(fmt::format("unknown shift branch '{}'", name));
}

cplx effective_mass_shift(double alpha, double k, ShiftBranch branch) {
  if (!(alpha > 0.0) || !(k > 0.0)) throw ConfigError("effective mass shift needs alpha > 0, k > 0");
  const double re = -std::log(k * k) / (2.0 * alpha);
  const double im = branch == ShiftBranch::complex_shift ? kPi / (2.0 * alpha) : 0.0;
  return {re, im};
}

ResidualReport effective_mass_residual(const states::LiouvilleEvaluator& ev, ShiftBranch branch,
                                       std::span<const SamplePoint> points, double tolerance) {
  const double a = ev.alpha();
  const double k = ev.k();
  const cplx delta = effective_mass_shift(a, k, branch);
  auto report = collect(fmt::format("eq30_{}", to_string(branch)), points.size(), tolerance, true,
                        [&](std::size_t i) {
    const SamplePoint pt = points[i];
    const cplx x = cplx(pt.x, 0.0) - delta;
    const auto v = ev.evaluate(x, pt.p, 2);
    const auto vs = ev.evaluate(x, cplx(pt.p, a));
    const cplx rho = v.derivatives[0];
    const cplx kinetic = pt.p * pt.p * rho - kI * pt.p * v.derivatives[1] - 0.25 * v.derivatives[2];
    const cplx r30 = kinetic - k * k * rho - k * k * std::exp(2.0 * a * pt.x) * vs.value();
    const cplx r31 = kinetic - k * k * rho + std::exp(2.0 * a * x) * vs.value();
    PointEval out;
    out.residuals = {{pt.x, pt.p, r30, {}}};
    out.scale = std::abs(rho);
    out.defect = std::abs(r30 - r31);
    merge_warnings(out.warnings, v.warnings);
    merge_warnings(out.warnings, vs.warnings);
    return out;
  });
  report.diagnostics["shift_re"] = delta.real();
  report.diagnostics["shift_im"] = delta.imag();
  report.diagnostics["shift_abs"] = std::abs(delta);
  return report;
}

}  // namespace starwall::star
