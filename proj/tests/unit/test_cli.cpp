#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

using namespace starwall;
using namespace starwall::cli;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> argv(std::initializer_list<const char*> words) {
  std::vector<std::string> out{"starwall"};
  for (const char* w : words) out.emplace_back(w);
  return out;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("starwall_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(ParseArgs, CheckWithK) {
  const CliConfig c = parse_args(argv({"check", "eq26", "--k", "1.0"}));
  CliConfig expected;
  expected.command = "check";
  expected.equation = "eq26";
  expected.state.k = 1.0;
  EXPECT_EQ(c, expected);
}

TEST(ParseArgs, StudyFlags) {
  const CliConfig c = parse_args(argv({"converge", "--alphas", "2,4,8", "--x-max", "-1", "--method", "series"}));
  EXPECT_EQ(c.alphas, (std::vector<double>{2, 4, 8}));
  ASSERT_TRUE(c.grid.has_value());
  EXPECT_EQ(c.grid->x_max, -1.0);
  EXPECT_EQ(c.grid->x_min, -3.0);  // the rest of the study window stays at its default
  EXPECT_EQ(c.method, states::GMethod::series);
  const CliConfig r = parse_args(argv({"robin", "--L-values", "0,0.5,1", "--k", "2"}));
  EXPECT_EQ(r.L_values.size(), 3u);
  EXPECT_EQ(r.state.k, 2.0);
}

TEST(ParseArgs, UsageErrors) {
  EXPECT_THROW(parse_args(argv({})), UsageError);
  EXPECT_THROW(parse_args(argv({"check", "eq99"})), UsageError);
  EXPECT_THROW(parse_args(argv({"check"})), UsageError);
  EXPECT_THROW(parse_args(argv({"check", "eq26", "--k", "-1"})), UsageError);
  EXPECT_THROW(parse_args(argv({"converge", "--alphas", "2,x"})), UsageError);
  EXPECT_THROW(parse_args(argv({"suppress", "--x-pos", "-0.5"})), UsageError);
  EXPECT_THROW(parse_args(argv({"check", "eq30", "--branch", "sideways"})), UsageError);
  EXPECT_THROW(parse_args(argv({"rho-bar", "--n-x", "1"})), UsageError);
  EXPECT_THROW(parse_args(argv({"rho-bar", "--state", "box"})), UsageError);
}

TEST(ParseArgs, Help) {
  EXPECT_THROW(parse_args(argv({"--help"})), HelpRequested);
  try {
    parse_args(argv({"check", "--help"}));
    FAIL();
  } catch (const HelpRequested& h) {
    EXPECT_NE(h.text.find("eq24"), std::string::npos);
  }
}

TEST(Config, RoundTripIsExact) {
  CliConfig c = parse_args(argv({"check", "eq30", "--state", "liouville", "--alpha", "2", "--k", "0.1",
                                 "--branch", "real-shift", "--samples", "9", "--seed", "17",
                                 "--x-min", "-4", "--tolerance", "3e-7", "--mb-nodes", "1024"}));
  c.energy = 1.0 / 3.0;
  const std::string text = emit_config(c);
  EXPECT_NE(text.find("[state]"), std::string::npos);
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  const CliConfig back = parse_config(text);
  EXPECT_EQ(back, c);
  EXPECT_EQ(back.energy, c.energy);
  EXPECT_EQ(emit_config(back), text);
  EXPECT_EQ(tolerance_for(back, "eq30"), 3e-7);
  EXPECT_EQ(tolerance_for(back, "eq26"), 1e-8);
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(parse_config("[state]\nkk = 1\n"), UsageError);
  EXPECT_THROW(parse_config("[extras]\na = 1\n"), UsageError);
  EXPECT_THROW(parse_config("[tolerances]\neq99 = 1\n"), UsageError);
  EXPECT_THROW(parse_config("[state]\nk = one\n"), UsageError);
}

TEST(Config, FlagsOverrideFile) {
  const fs::path dir = scratch_dir("config");
  {
    std::ofstream f(dir / "run.ini");
    f << "[run]\ncommand = check\nequation = eq26\n[state]\nfamily = robin\nk = 2\nL = 0.5\n";
  }
  const CliConfig c = parse_args(argv({"check", "eq26", "--config", (dir / "run.ini").c_str(), "--k", "3"}));
  EXPECT_EQ(c.state.family, states::Family::robin);
  EXPECT_EQ(c.state.L, 0.5);
  EXPECT_EQ(c.state.k, 3.0);
  EXPECT_THROW(parse_args(argv({"robin", "--config", (dir / "run.ini").c_str()})), UsageError);
}

TEST(Run, CheckVerdictsAndArtifacts) {
  const fs::path dir = scratch_dir("check");
  std::ostringstream out, err;
  EXPECT_EQ(main_entry(argv({"check", "eq26", "--state", "wall", "--k", "1", "--output", dir.c_str()}), out, err), 0);
  const auto j = nlohmann::json::parse(slurp(dir / "check_eq26.json"));
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_NE(out.str().find("eq26: pass"), std::string::npos);
  EXPECT_EQ(main_entry(argv({"check", "eq25", "--as-printed", "--output", dir.c_str()}), out, err), 1);
  EXPECT_TRUE(fs::exists(dir / "check_eq25_as_printed.json"));
  EXPECT_EQ(main_entry(argv({"check", "eq4", "--output", dir.c_str(), "--n-x", "2", "--x-min", "5"}), out, err), 2);
}

TEST(Run, StudiesWriteCsv) {
  const fs::path dir = scratch_dir("studies");
  std::ostringstream out, err;
  EXPECT_EQ(main_entry(argv({"converge", "--alphas", "2,4", "--n-x", "8", "--n-p", "8", "--output", dir.c_str()}), out, err), 0);
  std::istringstream csv(slurp(dir / "converge.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 3);
  EXPECT_EQ(main_entry(argv({"robin", "--output", dir.c_str()}), out, err), 0);
  EXPECT_TRUE(fs::exists(dir / "robin.json"));
  EXPECT_EQ(main_entry(argv({"rho-bar", "--n-x", "16", "--n-p", "16", "--output", dir.c_str()}), out, err), 0);
  const auto rho = core::Field::read_csv(*std::make_unique<std::ifstream>(dir / "rho_bar.csv"));
  EXPECT_EQ(rho.grid().x().size(), 16u);
}

TEST(Run, PurityCommands) {
  const fs::path dir = scratch_dir("purity");
  std::ostringstream out, err;
  EXPECT_EQ(main_entry(argv({"purity", "--state", "robin", "--L", "1", "--output", dir.c_str()}), out, err), 0);
  EXPECT_EQ(main_entry(argv({"purity", "--state", "free", "--amp-minus-re", "0.7", "--output", dir.c_str()}), out, err), 0);
  EXPECT_TRUE(fs::exists(dir / "purity_scan.csv"));
}

TEST(Executable, ExitCodes) {
  const fs::path dir = scratch_dir("exe");
  const std::string exe = STARWALL_CLI_PATH;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " --output " + dir.string() + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("check eq26 --state wall --k 1"), 0);
  EXPECT_EQ(status("check eq4 --state wall --k 1"), 1);
  EXPECT_EQ(status("check eq7"), 2);
  EXPECT_EQ(status("converge --alphas 2,4,8,16 --k 1"), 0);
}
