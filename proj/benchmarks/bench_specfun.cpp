#include <benchmark/benchmark.h>

#include "starwall/specfun/bessel.hpp"
#include "starwall/specfun/log_gamma.hpp"
#include "starwall/specfun/meijer_g.hpp"
#include "starwall/states/liouville.hpp"

using namespace starwall;

static void BM_LogGamma(benchmark::State& state) {
  cplx z(0.3, -4.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_gamma(z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_LogGamma);

// Small z takes the power series, larger z the integral representation.
static void BM_BesselKImagOrder(benchmark::State& state) {
  const double z = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(specfun::bessel_k_imag_order(1.0, z));
}
BENCHMARK(BM_BesselKImagOrder)->Arg(1)->Arg(150)->Arg(500)->Arg(2000);

static void BM_MeijerG(benchmark::State& state) {
  const bool contour = state.range(0) == 0;
  const auto params = specfun::GParams::conjugate_pairs({cplx(0, 0.3), cplx(0, -0.3), cplx(0, 0.9), cplx(0, -0.9)});
  const specfun::MellinBarnesSpec spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(contour ? specfun::meijer_g04_contour(0.05, params, spec)
                                     : specfun::meijer_g04_series(0.05, params));
  }
  state.SetLabel(contour ? "contour" : "series");
}
BENCHMARK(BM_MeijerG)->Arg(0)->Arg(1);

static void BM_LiouvilleWithDerivatives(benchmark::State& state) {
  const states::LiouvilleEvaluator ev(2.0, 1.0);
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ev.evaluate(-1.0, 0.7, order));
}
BENCHMARK(BM_LiouvilleWithDerivatives)->Arg(0)->Arg(4);
