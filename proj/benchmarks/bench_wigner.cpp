#include <benchmark/benchmark.h>

#include "starwall/analysis/purity.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

using namespace starwall;

static void BM_WignerQuadratureWall(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = core::make_grid(-5.0, -0.1, n, -5.0, 5.0, n);
  states::WignerOptions options;
  options.support = states::Support::half_line;
  const auto psi = [](double x) { return cplx(states::psi_wall(1.0, x)); };
  for (auto _ : state) benchmark::DoNotOptimize(states::wigner_transform_numeric(psi, g, options));
}
BENCHMARK(BM_WignerQuadratureWall)->Arg(32)->Arg(101)->Unit(benchmark::kMillisecond);

static void BM_WignerLatticeLiouville(benchmark::State& state) {
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8.0, 8.0, 513, -127.5 * dp, 127.5 * dp, 256);
  const auto psi = states::tabulated_liouville(1.0, 1.0, -30.0, 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(states::wigner_transform_grid(psi, g));
}
BENCHMARK(BM_WignerLatticeLiouville)->Unit(benchmark::kMillisecond);

static void BM_TabulateLiouville(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(states::tabulated_liouville(1.0, 1.0, -16.0, 12.0));
}
BENCHMARK(BM_TabulateLiouville)->Unit(benchmark::kMillisecond);

static void BM_PurityCheck(benchmark::State& state) {
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8.0, 0.0, 257, -127.5 * dp, 127.5 * dp, 256);
  const auto rho = states::wigner_transform_grid([](double x) { return cplx(states::psi_wall(1.0, x)); }, g);
  for (auto _ : state) benchmark::DoNotOptimize(analysis::purity_check(rho, -7.0, -1.0));
}
BENCHMARK(BM_PurityCheck)->Unit(benchmark::kMillisecond);
