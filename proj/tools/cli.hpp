#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starwall/specfun/meijer_g.hpp"
#include "starwall/states/liouville.hpp"
#include "starwall/states/state_spec.hpp"

namespace starwall::cli {

/// Bad flags, unknown keys or invalid values; the process exits with 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// --help or --version; `text` goes to stdout and the process exits with 0.
struct HelpRequested {
  std::string text;
};

struct GridParams {
  double x_min = -6.0;
  double x_max = 1.0;
  std::size_t n_x = 512;
  double p_min = -6.0;
  double p_max = 6.0;
  std::size_t n_p = 512;

  bool operator==(const GridParams&) const = default;
};

struct CliConfig {
  /// rho-bar, liouville, wigner, check, converge, suppress, purity, robin.
  std::string command;
  /// check only: eq4, eq24, eq25, eq26, eq27, eq30.
  std::string equation;
  states::StateSpec state;
  /// Unset means the command's own default lattice.
  std::optional<GridParams> grid;
  specfun::MellinBarnesSpec mb;
  states::GMethod method = states::GMethod::automatic;

  std::vector<double> alphas{2.0, 4.0, 8.0, 16.0};
  double x_pos = 0.5;
  std::vector<double> L_values{0.0, 1.0};
  std::size_t samples = 25;
  std::uint64_t seed = 20240611;
  std::string branch = "complex-shift";
  bool as_printed = false;
  std::optional<double> energy;

  std::map<std::string, double> tolerances;
  std::string output_dir = ".";

  bool operator==(const CliConfig&) const;
};

/// Tolerances used when the config does not set one.
const std::map<std::string, double>& default_tolerances();
double tolerance_for(const CliConfig& config, const std::string& id);

/// Parses `starwall <command> [args]`. Values from --config are read first
/// and explicit flags override them. Throws UsageError or HelpRequested.
CliConfig parse_args(const std::vector<std::string>& args);

/// Canonical INI text: fixed section and key order, 17 significant digits.
std::string emit_config(const CliConfig& config);
/// Inverse of emit_config; rejects unknown sections and keys.
CliConfig parse_config(const std::string& text);

/// Runs the command, writes artifacts into output_dir, prints a summary on
/// `out` and accuracy warnings on `err`. Returns 0 on pass, 1 on a failed
/// verdict.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with the exit-code convention 0 / 1 / 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace starwall::cli
