#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "starwall/analysis/convergence.hpp"
#include "starwall/analysis/purity.hpp"
#include "starwall/analysis/robin.hpp"
#include "starwall/analysis/suppression.hpp"
#include "starwall/core/errors.hpp"
#include "starwall/core/grid.hpp"
#include "starwall/star/operands.hpp"
#include "starwall/star/residuals.hpp"
#include "starwall/states/closed_forms.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

namespace starwall::cli {

namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

const std::set<std::string> kCommands{"rho-bar",  "liouville", "wigner", "check",
                                      "converge", "suppress",  "purity", "robin"};
const std::set<std::string> kEquations{"eq4", "eq24", "eq25", "eq26", "eq27", "eq30"};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += num(values[i]);
  }
  return out;
}

double to_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw UsageError(fmt::format("{}: '{}' is not a number", key, text));
  return v;
}

std::uint64_t to_unsigned(const std::string& text, const std::string& key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UsageError(fmt::format("{}: '{}' is not a non-negative integer", key, text));
  }
  return v;
}

std::vector<double> to_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_double(item, key));
  return out;
}

bool to_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError(fmt::format("{}: '{}' is not a boolean", key, text));
}

GridParams grid_params(const core::PhaseSpaceGrid& g) {
  return {g.x().min(), g.x().max(), g.x().size(), g.p().min(), g.p().max(), g.p().size()};
}

core::PhaseSpaceGrid to_grid(const GridParams& g) {
  return core::make_grid(g.x_min, g.x_max, g.n_x, g.p_min, g.p_max, g.n_p);
}

// x in [-8, 8] with dx = 1/32 and dy = 1/16, so kernel points land on the x-lattice.
GridParams purity_grid() {
  const double dp = kPi / 16.0;
  return {-8.0, 8.0, 513, -127.5 * dp, 127.5 * dp, 256};
}

GridParams default_grid_for(const CliConfig& c) {
  if (c.command == "converge") {
    const analysis::Window w;
    return {w.x_min, w.x_max, w.n_x, w.p_min, w.p_max, w.n_p};
  }
  if (c.command == "robin") return grid_params(analysis::default_robin_grid());
  if (c.command == "purity") {
    if (c.state.family == states::Family::free_superposition) {
      return grid_params(analysis::interference_grid(c.state.k));
    }
    return purity_grid();
  }
  return grid_params(core::default_grid());
}

void validate(const CliConfig& c) {
  if (!kCommands.count(c.command)) throw UsageError(fmt::format("unknown command '{}'", c.command));
  if (c.command == "check" && !kEquations.count(c.equation)) {
    throw UsageError(fmt::format("check: unknown equation '{}'", c.equation));
  }
  if (c.command != "check" && !c.equation.empty()) {
    throw UsageError("an equation is only accepted by the check command");
  }
  try {
    c.state.validate();
    c.mb.validate();
    if (c.grid) to_grid(*c.grid);
    star::shift_branch_from_string(c.branch);
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
  if (c.alphas.empty()) throw UsageError("alphas must not be empty");
  for (double a : c.alphas) {
    if (!(a > 0.0)) throw UsageError("alphas must be positive");
  }
  if (c.L_values.empty()) throw UsageError("L values must not be empty");
  if (!(c.x_pos > 0.0)) throw UsageError("x_pos must be positive");
  if (c.samples == 0) throw UsageError("samples must be positive");
  for (const auto& [id, tol] : c.tolerances) {
    if (!(tol > 0.0)) throw UsageError(fmt::format("tolerance {} must be positive", id));
  }
}

// ---- INI ----

const std::map<std::string, std::vector<std::string>>& known_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"run", {"command", "equation", "output"}},
      {"state",
       {"family", "k", "alpha", "L", "amp_plus_re", "amp_plus_im", "amp_minus_re", "amp_minus_im",
        "sigma_reg"}},
      {"grid", {"x_min", "x_max", "n_x", "p_min", "p_max", "n_p"}},
      {"mellin_barnes", {"sigma", "t_max", "n_nodes", "method"}},
      {"study", {"alphas", "x_pos", "L_values", "samples", "seed", "branch", "as_printed", "energy"}},
      {"tolerances", {}},
  };
  return keys;
}

void apply_key(CliConfig& c, const std::string& section, const std::string& key,
               const std::string& v, GridParams& grid, bool& grid_seen) {
  const std::string name = section + "." + key;
  if (section == "run") {
    if (key == "command") c.command = v;
    else if (key == "equation") c.equation = v;
    else if (key == "output") c.output_dir = v;
  } else if (section == "state") {
    try {
      if (key == "family") c.state.family = states::family_from_string(v);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    if (key == "k") c.state.k = to_double(v, name);
    else if (key == "alpha") c.state.alpha = to_double(v, name);
    else if (key == "L") c.state.L = to_double(v, name);
    else if (key == "amp_plus_re") c.state.amp_plus.real(to_double(v, name));
    else if (key == "amp_plus_im") c.state.amp_plus.imag(to_double(v, name));
    else if (key == "amp_minus_re") c.state.amp_minus.real(to_double(v, name));
    else if (key == "amp_minus_im") c.state.amp_minus.imag(to_double(v, name));
    else if (key == "sigma_reg") c.state.sigma_reg = to_double(v, name);
  } else if (section == "grid") {
    grid_seen = true;
    if (key == "x_min") grid.x_min = to_double(v, name);
    else if (key == "x_max") grid.x_max = to_double(v, name);
    else if (key == "n_x") grid.n_x = to_unsigned(v, name);
    else if (key == "p_min") grid.p_min = to_double(v, name);
    else if (key == "p_max") grid.p_max = to_double(v, name);
    else if (key == "n_p") grid.n_p = to_unsigned(v, name);
  } else if (section == "mellin_barnes") {
    if (key == "sigma") c.mb.sigma = to_double(v, name);
    else if (key == "t_max") c.mb.t_max = to_double(v, name);
    else if (key == "n_nodes") c.mb.n_nodes = to_unsigned(v, name);
    else if (key == "method") {
      try {
        c.method = states::gmethod_from_string(v);
      } catch (const ConfigError& e) {
        throw UsageError(e.what());
      }
    }
  } else if (section == "study") {
    if (key == "alphas") c.alphas = to_list(v, name);
    else if (key == "x_pos") c.x_pos = to_double(v, name);
    else if (key == "L_values") c.L_values = to_list(v, name);
    else if (key == "samples") c.samples = to_unsigned(v, name);
    else if (key == "seed") c.seed = to_unsigned(v, name);
    else if (key == "branch") c.branch = v;
    else if (key == "as_printed") c.as_printed = to_bool(v, name);
    else if (key == "energy") c.energy = to_double(v, name);
  } else if (section == "tolerances") {
    c.tolerances[key] = to_double(v, name);
  }
}

// ---- output helpers ----

fs::path artifact(const CliConfig& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  return fs::path(c.output_dir) / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write {}", path.string()));
  f << text;
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void write_field(const fs::path& path, const core::Field& field) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(fmt::format("cannot write {}", path.string()));
  field.write_csv(f);
}

void print_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) fmt::print(err, "warning: {}\n", w);
}

int report_verdict(const CliConfig& c, const star::ResidualReport& r, std::ostream& out,
                   std::ostream& err) {
  write_json(artifact(c, fmt::format("check_{}.json", r.equation_id)), r.to_json());
  print_warnings(err, r.warnings);
  std::string extra;
  for (const auto& [name, value] : r.diagnostics) extra += fmt::format(", {} {:.3e}", name, value);
  fmt::print(out, "{}: {} (residual/scale {:.3e}, tolerance {:.1e}{})\n", r.equation_id,
             r.pass ? "pass" : "fail", r.ratio(), r.tolerance, extra);
  return r.pass ? 0 : 1;
}

// ---- state helpers ----

core::Field closed_form_field(const states::StateSpec& s, const core::PhaseSpaceGrid& grid) {
  switch (s.family) {
    case states::Family::wall:
      return core::Field::sample(grid, [&](double x, double p) { return states::rho_bar_closed(s.k, x, p); });
    case states::Family::robin:
      return core::Field::sample(grid, [&](double x, double p) { return states::rho_robin_closed(s.k, s.L, x, p); });
    case states::Family::free_superposition:
      return states::rho_free_regularized(s, grid);
    case states::Family::liouville:
      break;
  }
  throw UsageError("the liouville family has no elementary closed form; use the liouville command");
}

star::AnalyticOperand analytic_operand(const states::StateSpec& s) {
  if (s.family == states::Family::wall) return star::rho_bar_operand(s.k);
  if (s.family == states::Family::robin) {
    return star::half_line_operand(s.k, states::robin_phase(s.k, s.L));
  }
  throw UsageError("eq26 with analytic derivatives needs a wall or robin state");
}

// Liouville states go through the tabulated wavefunction; direct Bessel
// evaluation at every quadrature node is far too slow.
std::function<cplx(double)> wavefunction(const states::StateSpec& s, double x_lo, double x_hi) {
  if (s.family == states::Family::liouville) return states::tabulated_liouville(s.alpha, s.k, x_lo, x_hi);
  return states::make_wavefunction(s);
}

// ---- commands ----

int run_check(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const double tol = tolerance_for(c, c.equation);
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  const states::LiouvilleEvaluator ev(c.state.alpha, c.state.k, c.mb, c.method);
  const double k = c.state.k;
  if (c.equation == "eq4") {
    return report_verdict(c, star::genvalue_residual_free(closed_form_field(c.state, grid), k, tol), out, err);
  }
  if (c.equation == "eq24") {
    const auto pts = star::liouville_sample(k, c.samples, c.seed);
    return report_verdict(c, star::genvalue_residual_liouville(ev, pts, tol), out, err);
  }
  if (c.equation == "eq25") {
    const auto pts = star::liouville_sample(k, c.samples, c.seed);
    const auto variant = c.as_printed ? star::DifferenceVariant::as_printed : star::DifferenceVariant::derived;
    return report_verdict(c, star::difference_eq_residual(ev, pts, variant, tol), out, err);
  }
  if (c.equation == "eq26") {
    star::FourthOrderOptions options;
    options.tolerance = tol;
    if (c.as_printed) options.coefficient = star::QuarticCoefficient::as_printed;
    if (c.state.family == states::Family::free_superposition) {
      return report_verdict(c, star::fourth_order_residual(closed_form_field(c.state, grid), k, options), out, err);
    }
    return report_verdict(c, star::fourth_order_residual(analytic_operand(c.state), k, grid, options), out, err);
  }
  if (c.equation == "eq27") {
    star::LrStarOptions options;
    options.tolerance = tol;
    return report_verdict(
        c, star::lr_star_residual(closed_form_field(c.state, grid), c.energy.value_or(k * k), options), out, err);
  }
  const double avoid[] = {0.0, k, -k};
  const auto pts = star::stratified_sample(-2.0, 0.3, -2.0, 2.0, c.samples, c.seed, avoid);
  return report_verdict(
      c, star::effective_mass_residual(ev, star::shift_branch_from_string(c.branch), pts, tol), out, err);
}

int run_rho_bar(const CliConfig& c, std::ostream& out) {
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  states::StateSpec s = c.state;
  if (s.family != states::Family::robin) s.family = states::Family::wall;
  const core::Field field = closed_form_field(s, grid);
  write_field(artifact(c, "rho_bar.csv"), field);
  fmt::print(out, "rho-bar: {} x {} points, sup {:.6e}\n", grid.x().size(), grid.p().size(), field.sup_norm());
  return 0;
}

int run_liouville(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  const states::LiouvilleEvaluator ev(c.state.alpha, c.state.k, c.mb, c.method);
  std::vector<std::string> warnings;
  const core::Field field = states::sample_liouville(ev, grid, &warnings);
  warnings.erase(std::unique(warnings.begin(), warnings.end()), warnings.end());
  write_field(artifact(c, "liouville.csv"), field);
  print_warnings(err, warnings);
  fmt::print(out, "liouville: alpha {} k {}, {} x {} points, sup {:.6e}\n", c.state.alpha, c.state.k,
             grid.x().size(), grid.p().size(), field.sup_norm());
  return 0;
}

int run_wigner(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  if (c.state.family == states::Family::free_superposition) {
    throw UsageError("wigner: free states are not normalisable; use purity or the library's envelope states");
  }
  states::WignerOptions options;
  if (states::is_half_line(c.state.family)) {
    options.support = states::Support::half_line;
    options.window_half_width = std::max(10.0, std::abs(grid.x().min()) + 1.0);
  } else {
    options.window_half_width = std::max(10.0, std::abs(grid.x().min()) + 6.0);
  }
  const double Y = options.window_half_width;
  const auto psi = wavefunction(c.state, grid.x().min() - Y, grid.x().max() + Y);
  const auto result = states::wigner_transform_numeric(psi, grid, options);
  write_field(artifact(c, "wigner.csv"), result.field);
  write_json(artifact(c, "wigner.json"),
             {{"family", std::string(states::to_string(c.state.family))},
              {"error_estimate", result.error_estimate},
              {"sup_norm", result.field.sup_norm()},
              {"warnings", result.warnings}});
  print_warnings(err, result.warnings);
  fmt::print(out, "wigner: {} x {} points, quadrature error estimate {:.3e}\n", grid.x().size(),
             grid.p().size(), result.error_estimate);
  return 0;
}

int run_converge(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const GridParams g = c.grid.value_or(default_grid_for(c));
  const analysis::Window window{g.x_min, g.x_max, g.n_x, g.p_min, g.p_max, g.n_p};
  const auto report = analysis::convergence_study(c.alphas, c.state.k, window, c.mb, c.method);
  std::ostringstream csv;
  report.write_csv(csv);
  write_text(artifact(c, "converge.csv"), csv.str());
  write_json(artifact(c, "converge.json"), report.to_json());
  for (std::size_t i = 0; i < report.alphas.size(); ++i) {
    for (const auto& w : report.warnings[i]) fmt::print(err, "warning: alpha {}: {}\n", report.alphas[i], w);
    fmt::print(out, "alpha {:<6} distance {:.6e}\n", report.alphas[i], report.distances[i]);
  }
  fmt::print(out, "converge: {}\n", report.monotone ? "strictly decreasing (pass)" : "not monotone (fail)");
  return report.monotone ? 0 : 1;
}

int run_suppress(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto report = analysis::wall_suppression_study(c.alphas, c.state.k, c.x_pos,
                                                       analysis::default_p_samples(), c.mb, c.method);
  std::ostringstream csv;
  report.write_csv(csv);
  write_text(artifact(c, "suppress.csv"), csv.str());
  write_json(artifact(c, "suppress.json"), report.to_json());
  for (std::size_t i = 0; i < report.alphas.size(); ++i) {
    for (const auto& w : report.warnings[i]) fmt::print(err, "warning: alpha {}: {}\n", report.alphas[i], w);
    fmt::print(out, "alpha {:<6} r {:.6e}{}\n", report.alphas[i], report.ratios[i],
               report.underflow[i] ? " (underflow)" : "");
  }
  fmt::print(out, "suppress: {}\n", report.decreasing ? "strictly decreasing (pass)" : "not decreasing (fail)");
  return report.decreasing ? 0 : 1;
}

int run_purity(const CliConfig& c, std::ostream& out) {
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  const double tol = tolerance_for(c, "purity");
  const auto& s = c.state;
  if (s.family == states::Family::free_superposition) {
    const double a_plus = std::norm(s.amp_plus);
    const double a_minus = std::norm(s.amp_minus);
    const double pure = std::sqrt(a_plus * a_minus);
    if (pure == 0.0) throw UsageError("purity scan needs both free amplitudes non-zero");
    std::vector<double> moduli;
    for (int i = 0; i <= 20; ++i) moduli.push_back(pure * (0.5 + 0.05 * i));
    const double phase = std::arg(s.amp_plus * std::conj(s.amp_minus));
    const auto scan = analysis::interference_scan(a_plus, a_minus, s.k, phase, s.sigma_reg, moduli, grid, -2.0, 2.0);
    std::string csv = "modulus,purity_metric\n";
    for (std::size_t i = 0; i < moduli.size(); ++i) csv += fmt::format("{:.17g},{:.17g}\n", moduli[i], scan.metrics[i]);
    write_text(artifact(c, "purity_scan.csv"), csv);
    const bool pass = scan.argmin == 10;
    write_json(artifact(c, "purity.json"), {{"moduli", scan.moduli},
                                            {"metrics", scan.metrics},
                                            {"argmin_modulus", scan.moduli[scan.argmin]},
                                            {"pure_modulus", scan.pure_modulus},
                                            {"verdict", pass ? "pass" : "fail"}});
    fmt::print(out, "purity scan: minimum at |b| = {:.6f}, pure-state value {:.6f} ({})\n",
               scan.moduli[scan.argmin], pure, pass ? "pass" : "fail");
    return pass ? 0 : 1;
  }
  const double reach = grid.x().max() - grid.x().min();
  const auto psi = wavefunction(s, grid.x().min() - reach, grid.x().max() + reach);
  const core::Field rho = states::wigner_transform_grid(psi, grid);
  const auto report = analysis::purity_check(rho, -6.0, -1.0);
  const bool pass = report.purity_metric < tol;
  auto j = report.to_json();
  j["tolerance"] = tol;
  j["verdict"] = pass ? "pass" : "fail";
  write_json(artifact(c, "purity.json"), j);
  fmt::print(out, "purity: s2/s1 = {:.3e} over {} kernel points ({})\n", report.purity_metric,
             report.window.n, pass ? "pass" : "fail");
  return pass ? 0 : 1;
}

int run_robin(const CliConfig& c, std::ostream& out) {
  const core::PhaseSpaceGrid grid = to_grid(c.grid.value_or(default_grid_for(c)));
  const auto report = analysis::robin_scan(c.L_values, c.state.k, grid);
  std::ostringstream csv;
  report.write_csv(csv);
  write_text(artifact(c, "robin.csv"), csv.str());
  write_json(artifact(c, "robin.json"), report.to_json());
  bool pass = true;
  for (const auto& e : report.entries) {
    const bool ok = e.fourth_order.pass && e.closed_form_defect < 1e-8 && (e.L != 0.0 || e.wall_defect < 1e-10);
    pass = pass && ok;
    fmt::print(out, "L {:<6} phase {:+.6f} boundary slope {:+.6e} fourth-order {:.3e} ({})\n", e.L, e.phase,
               e.boundary_slope.front(), e.fourth_order.ratio(), ok ? "pass" : "fail");
  }
  return pass ? 0 : 1;
}

}  // namespace

bool CliConfig::operator==(const CliConfig& o) const { return emit_config(*this) == emit_config(o); }

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{{"eq4", 1e-6},  {"eq24", 1e-6}, {"eq25", 1e-6},
                                               {"eq26", 1e-8}, {"eq27", 1e-5}, {"eq30", 1e-6},
                                               {"purity", 1e-8}};
  return t;
}

double tolerance_for(const CliConfig& config, const std::string& id) {
  if (const auto it = config.tolerances.find(id); it != config.tolerances.end()) return it->second;
  if (const auto it = default_tolerances().find(id); it != default_tolerances().end()) return it->second;
  return 1e-6;
}

std::string emit_config(const CliConfig& c) {
  ptree tree;
  tree.put("run.command", c.command);
  tree.put("run.equation", c.equation);
  tree.put("run.output", c.output_dir);
  tree.put("state.family", std::string(states::to_string(c.state.family)));
  tree.put("state.k", num(c.state.k));
  tree.put("state.alpha", num(c.state.alpha));
  tree.put("state.L", num(c.state.L));
  tree.put("state.amp_plus_re", num(c.state.amp_plus.real()));
  tree.put("state.amp_plus_im", num(c.state.amp_plus.imag()));
  tree.put("state.amp_minus_re", num(c.state.amp_minus.real()));
  tree.put("state.amp_minus_im", num(c.state.amp_minus.imag()));
  tree.put("state.sigma_reg", num(c.state.sigma_reg));
  if (c.grid) {
    tree.put("grid.x_min", num(c.grid->x_min));
    tree.put("grid.x_max", num(c.grid->x_max));
    tree.put("grid.n_x", c.grid->n_x);
    tree.put("grid.p_min", num(c.grid->p_min));
    tree.put("grid.p_max", num(c.grid->p_max));
    tree.put("grid.n_p", c.grid->n_p);
  }
  tree.put("mellin_barnes.sigma", num(c.mb.sigma));
  tree.put("mellin_barnes.t_max", num(c.mb.t_max));
  tree.put("mellin_barnes.n_nodes", c.mb.n_nodes);
  tree.put("mellin_barnes.method", std::string(states::to_string(c.method)));
  tree.put("study.alphas", join(c.alphas));
  tree.put("study.x_pos", num(c.x_pos));
  tree.put("study.L_values", join(c.L_values));
  tree.put("study.samples", c.samples);
  tree.put("study.seed", c.seed);
  tree.put("study.branch", c.branch);
  tree.put("study.as_printed", c.as_printed ? "true" : "false");
  if (c.energy) tree.put("study.energy", num(*c.energy));
  if (!c.tolerances.empty()) {
    ptree tol;
    for (const auto& [id, v] : c.tolerances) tol.put(id, num(v));
    tree.add_child("tolerances", tol);
  }
  std::ostringstream out;
  boost::property_tree::write_ini(out, tree);
  return out.str();
}

CliConfig parse_config(const std::string& text) {
  ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw UsageError(fmt::format("config: {}", e.message()));
  }
  CliConfig c;
  GridParams grid;
  bool grid_seen = false;
  for (const auto& [section, entries] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) throw UsageError(fmt::format("config: unknown section [{}]", section));
    if (entries.empty() && !entries.data().empty()) {
      throw UsageError(fmt::format("config: key '{}' outside any section", section));
    }
    for (const auto& [key, value] : entries) {
      const auto& allowed = known->second;
      const bool ok = section == "tolerances"
                          ? (kEquations.count(key) > 0 || key == "purity")
                          : std::find(allowed.begin(), allowed.end(), key) != allowed.end();
      if (!ok) throw UsageError(fmt::format("config: unknown key '{}.{}'", section, key));
      apply_key(c, section, key, value.data(), grid, grid_seen);
    }
  }
  if (grid_seen) c.grid = grid;
  return c;
}

CliConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Star-product quantization of a particle against a wall: residual checks and studies.",
               "starwall"};
  app.set_version_flag("--version", "starwall 0.1.0");
  app.require_subcommand(1);
  app.fallthrough(false);

  struct Raw {
    std::string config, output, state, method, branch, equation;
    double k = 0, alpha = 0, L = 0, apr = 0, api = 0, amr = 0, ami = 0, sigma_reg = 0;
    double x_min = 0, x_max = 0, p_min = 0, p_max = 0;
    std::size_t n_x = 0, n_p = 0, mb_nodes = 0, samples = 0;
    double mb_sigma = 0, mb_t_max = 0, x_pos = 0, energy = 0, tolerance = 0;
    std::vector<double> alphas, L_values;
    std::uint64_t seed = 0;
    bool as_printed = false;
  } raw;

  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  const auto add_common = [&](CLI::App* sub) {
    auto& o = options[sub->get_name()];
    o["config"] = sub->add_option("--config", raw.config, "INI config file; flags override its values");
    o["output"] = sub->add_option("--output", raw.output, "Directory for artifacts (default .)");
    o["state"] = sub->add_option("--state", raw.state, "wall | robin | liouville | free (default wall)");
    o["k"] = sub->add_option("--k", raw.k, "Wave number, E = k^2 (default 1)");
    o["alpha"] = sub->add_option("--alpha", raw.alpha, "Liouville steepness (default 1)");
    o["L"] = sub->add_option("--L", raw.L, "Robin length (default 0)");
    o["amp_plus_re"] = sub->add_option("--amp-plus-re", raw.apr, "Free amplitude of e^{ikx}, real part (default 1)");
    o["amp_plus_im"] = sub->add_option("--amp-plus-im", raw.api, "... imaginary part (default 0)");
    o["amp_minus_re"] = sub->add_option("--amp-minus-re", raw.amr, "Free amplitude of e^{-ikx}, real part (default 0)");
    o["amp_minus_im"] = sub->add_option("--amp-minus-im", raw.ami, "... imaginary part (default 0)");
    o["sigma_reg"] = sub->add_option("--sigma-reg", raw.sigma_reg, "Gaussian width replacing delta(p) (default 0.05)");
    o["x_min"] = sub->add_option("--x-min", raw.x_min, "Grid lower x (command default otherwise)");
    o["x_max"] = sub->add_option("--x-max", raw.x_max, "Grid upper x");
    o["n_x"] = sub->add_option("--n-x", raw.n_x, "Grid points in x");
    o["p_min"] = sub->add_option("--p-min", raw.p_min, "Grid lower p");
    o["p_max"] = sub->add_option("--p-max", raw.p_max, "Grid upper p");
    o["n_p"] = sub->add_option("--n-p", raw.n_p, "Grid points in p");
    o["mb_sigma"] = sub->add_option("--mb-sigma", raw.mb_sigma, "Mellin-Barnes line Re s (default -0.25)");
    o["mb_t_max"] = sub->add_option("--mb-t-max", raw.mb_t_max, "Mellin-Barnes truncation (default 12)");
    o["mb_nodes"] = sub->add_option("--mb-nodes", raw.mb_nodes, "Mellin-Barnes quadrature nodes (default 512)");
    o["method"] = sub->add_option("--method", raw.method, "contour | series | auto (default auto)");
    o["tolerance"] = sub->add_option("--tolerance", raw.tolerance, "Verdict tolerance for this check");
  };

  std::vector<CLI::App*> subs;
  for (const auto& [name, help] :
       std::vector<std::pair<std::string, std::string>>{
           {"rho-bar", "Closed-form wall (or Robin) Wigner function on a grid -> rho_bar.csv"},
           {"liouville", "Mellin-Barnes Wigner function of the exponential wall -> liouville.csv"},
           {"wigner", "Numerical Wigner transform of a state -> wigner.csv, wigner.json"},
           {"check", "Residual check of one equation -> check_<id>.json; exit 1 on fail"},
           {"converge", "alpha -> infinity convergence to the wall -> converge.csv, converge.json"},
           {"suppress", "Suppression of rho_alpha for x > 0 -> suppress.csv, suppress.json"},
           {"purity", "Kernel-rank purity check -> purity.json"},
           {"robin", "Robin boundary scan -> robin.csv, robin.json"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub);
    subs.push_back(sub);
  }
  CLI::App* check = app.get_subcommand("check");
  check->add_option("equation", raw.equation, "eq4 | eq24 | eq25 | eq26 | eq27 | eq30")->required();
  options["check"]["samples"] = check->add_option("--samples", raw.samples, "Sample points (default 25)");
  options["check"]["seed"] = check->add_option("--seed", raw.seed, "Sample seed");
  options["check"]["branch"] = check->add_option("--branch", raw.branch, "eq30: complex-shift | real-shift");
  options["check"]["as_printed"] = check->add_flag("--as-printed", raw.as_printed,
                                                   "eq25/eq26: use the uncorrected coefficients (contrast runs)");
  options["check"]["energy"] = check->add_option("--energy", raw.energy, "eq27: energy E (default k^2)");
  for (const char* name : {"converge", "suppress"}) {
    options[name]["alphas"] =
        app.get_subcommand(name)->add_option("--alphas", raw.alphas, "Comma-separated steepness values")->delimiter(',');
  }
  options["suppress"]["x_pos"] = app.get_subcommand("suppress")->add_option("--x-pos", raw.x_pos, "Probe point x > 0 (default 0.5)");
  options["robin"]["L_values"] =
      app.get_subcommand("robin")->add_option("--L-values", raw.L_values, "Comma-separated Robin lengths (default 0,1)")->delimiter(',');

  std::vector<std::string> reversed(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(reversed.begin(), reversed.end());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::string text = app.help();
    for (CLI::App* sub : subs) {
      if (sub->parsed()) text = sub->help();
    }
    throw HelpRequested{text};
  } catch (const CLI::CallForVersion&) {
    throw HelpRequested{"starwall 0.1.0\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* chosen = nullptr;
  for (CLI::App* sub : subs) {
    if (sub->parsed()) chosen = sub;
  }
  const std::string name = chosen->get_name();
  auto& o = options[name];
  const auto given = [&](const std::string& key) { return o.count(key) && o[key]->count() > 0; };

  CliConfig c;
  if (given("config")) {
    std::ifstream f(raw.config);
    if (!f) throw UsageError(fmt::format("cannot read config file {}", raw.config));
    std::stringstream ss;
    ss << f.rdbuf();
    c = parse_config(ss.str());
    if (!c.command.empty() && c.command != name) {
      throw UsageError(fmt::format("config file is for '{}', not '{}'", c.command, name));
    }
  }
  c.command = name;
  if (name == "check") c.equation = raw.equation;
  if (given("output")) c.output_dir = raw.output;
  if (given("state")) {
    try {
      c.state.family = states::family_from_string(raw.state);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (given("k")) c.state.k = raw.k;
  if (given("alpha")) c.state.alpha = raw.alpha;
  if (given("L")) c.state.L = raw.L;
  if (given("amp_plus_re")) c.state.amp_plus.real(raw.apr);
  if (given("amp_plus_im")) c.state.amp_plus.imag(raw.api);
  if (given("amp_minus_re")) c.state.amp_minus.real(raw.amr);
  if (given("amp_minus_im")) c.state.amp_minus.imag(raw.ami);
  if (given("sigma_reg")) c.state.sigma_reg = raw.sigma_reg;
  const bool grid_flag = given("x_min") || given("x_max") || given("n_x") || given("p_min") ||
                         given("p_max") || given("n_p");
  if (grid_flag) {
    GridParams g = c.grid.value_or(default_grid_for(c));
    if (given("x_min")) g.x_min = raw.x_min;
    if (given("x_max")) g.x_max = raw.x_max;
    if (given("n_x")) g.n_x = raw.n_x;
    if (given("p_min")) g.p_min = raw.p_min;
    if (given("p_max")) g.p_max = raw.p_max;
    if (given("n_p")) g.n_p = raw.n_p;
    c.grid = g;
  }
  if (given("mb_sigma")) c.mb.sigma = raw.mb_sigma;
  if (given("mb_t_max")) c.mb.t_max = raw.mb_t_max;
  if (given("mb_nodes")) c.mb.n_nodes = raw.mb_nodes;
  if (given("method")) {
    try {
      c.method = states::gmethod_from_string(raw.method);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
  }
  if (given("samples")) c.samples = raw.samples;
  if (given("seed")) c.seed = raw.seed;
  if (given("branch")) c.branch = raw.branch;
  if (given("as_printed")) c.as_printed = raw.as_printed;
  if (given("energy")) c.energy = raw.energy;
  if (given("alphas")) c.alphas = raw.alphas;
  if (given("x_pos")) c.x_pos = raw.x_pos;
  if (given("L_values")) c.L_values = raw.L_values;
  if (given("tolerance")) {
    c.tolerances[name == "check" ? c.equation : name == "purity" ? "purity" : name] = raw.tolerance;
  }
  validate(c);
  return c;
}

int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  validate(c);
  if (c.command == "check") return run_check(c, out, err);
  if (c.command == "rho-bar") return run_rho_bar(c, out);
  if (c.command == "liouville") return run_liouville(c, out, err);
  if (c.command == "wigner") return run_wigner(c, out, err);
  if (c.command == "converge") return run_converge(c, out, err);
  if (c.command == "suppress") return run_suppress(c, out, err);
  if (c.command == "purity") return run_purity(c, out);
  return run_robin(c, out);
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\nRun 'starwall --help' for usage.\n", e.what());
    return 2;
  }
  try {
    return run(config, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
}

}  // namespace starwall::cli
