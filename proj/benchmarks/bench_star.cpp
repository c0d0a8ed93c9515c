#include <cmath>

#include <benchmark/benchmark.h>

#include "starwall/star/star_product.hpp"
#include "starwall/states/closed_forms.hpp"

using namespace starwall;

namespace {

core::Field gaussian(std::size_t n) {
  const auto g = core::make_grid(-8.0, 8.0, n, -8.0, 8.0, n);
  return core::Field::sample(g, [](double x, double p) { return std::exp(-0.4 * (x * x + p * p)); });
}

}  // namespace

static void BM_StarProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const core::Field f = gaussian(n);
  for (auto _ : state) benchmark::DoNotOptimize(star::star(f, f));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n * n));
}
BENCHMARK(BM_StarProduct)->RangeMultiplier(2)->Range(16, 64)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

static void BM_BoppShiftQuartic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = core::make_grid(-6.0, 1.0, n, -6.0, 6.0, n);
  const core::Field rho = core::Field::sample(g, [](double x, double p) { return states::rho_bar_closed(1.0, x, p); });
  const star::PPolynomial h{-1.0, 0.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(star::star_right(star::star_left(h, rho), h));
}
BENCHMARK(BM_BoppShiftQuartic)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
