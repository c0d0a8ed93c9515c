#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "starwall/core/errors.hpp"
#include "starwall/core/field.hpp"
#include "starwall/core/fit.hpp"
#include "starwall/core/grid.hpp"
#include "starwall/core/quadrature.hpp"
#include "starwall/core/transforms.hpp"

using namespace starwall;
using core::Field;
using core::FieldKind;

namespace {

double gauss(double x, double p) { return std::exp(-x * x - 0.5 * p * p); }

}  // namespace

TEST(Axis, EndpointsAreExact) {
  const core::Axis a(-6.0, 1.0, 512);
  EXPECT_EQ(a.at(0), -6.0);
  EXPECT_EQ(a.at(511), 1.0);
  EXPECT_NEAR(a.step(), 7.0 / 511.0, 1e-16);
  EXPECT_DOUBLE_EQ(a.period(), 512.0 * a.step());
}

TEST(Axis, RejectsBadBounds) {
  EXPECT_THROW(core::Axis(1.0, 1.0, 10), ConfigError);
  EXPECT_THROW(core::Axis(0.0, 1.0, 1), ConfigError);
  EXPECT_THROW(core::Axis(0.0, INFINITY, 4), ConfigError);
}

TEST(Grid, DefaultGrid) {
  const auto g = core::default_grid();
  EXPECT_EQ(g.x().size(), 512u);
  EXPECT_EQ(g.p().size(), 512u);
  EXPECT_EQ(g.x().min(), -6.0);
  EXPECT_EQ(g.p().max(), 6.0);
  EXPECT_EQ(g.index(1, 0), 512u);
}

TEST(Field, RealExpectedRejectsImaginaryPart) {
  const auto g = core::make_grid(-1, 1, 4, -1, 1, 4);
  std::vector<cplx> v(g.size(), cplx(1.0, 1e-3));
  EXPECT_THROW(Field(g, v, FieldKind::real_expected), NumericsError);
  EXPECT_NO_THROW(Field(g, v, FieldKind::complex));
}

TEST(Field, CsvRoundTripIsExact) {
  const auto g = core::make_grid(-2.5, 1.0, 7, -3.0, 3.0, 5);
  const Field f = Field::sample(g, [](double x, double p) { return cplx(std::sin(x * p), x - p / 3.0); },
                                FieldKind::complex);
  std::stringstream s;
  f.write_csv(s);
  EXPECT_EQ(s.str().substr(0, 9), "x,p,re,im");
  const Field back = Field::read_csv(s);
  ASSERT_EQ(back.grid(), f.grid());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(back.values()[i], f.values()[i]);
}

TEST(Field, ReadCsvRejectsScatteredPoints) {
  std::stringstream s("x,p,re,im\n0,0,1,0\n0,1,1,0\n1,0,1,0\n1,3,1,0\n");
  EXPECT_THROW(Field::read_csv(s), GridError);
}

TEST(Field, Norms) {
  const auto g = core::make_grid(-8, 8, 201, -8, 8, 201);
  const Field f = Field::sample(g, gauss);
  EXPECT_DOUBLE_EQ(f.sup_norm(), 1.0);
  // integral of exp(-2x^2 - p^2) = pi / sqrt 2
  EXPECT_NEAR(f.l2_norm(), std::sqrt(kPi / std::sqrt(2.0)), 1e-10);
}

TEST(ScaleFit, RecoversScale) {
  const auto g = core::make_grid(-3, 3, 31, -3, 3, 31);
  const Field ref = Field::sample(g, gauss);
  const auto fit = core::fit_scale(ref.scaled(-0.1591549430918953), ref);
  EXPECT_NEAR(fit.scale, -0.1591549430918953, 1e-16);
  EXPECT_LT(fit.relative_residual, 1e-14);
}

TEST(ScaleFit, ZeroReferenceThrows) {
  const auto g = core::make_grid(-1, 1, 3, -1, 1, 3);
  EXPECT_THROW(core::fit_scale(Field::zeros(g), Field::zeros(g)), DegenerateReferenceError);
  EXPECT_THROW(core::fit_scale(Field::zeros(g), Field::zeros(core::make_grid(-1, 1, 4, -1, 1, 3))),
               GridError);
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const auto& rule = core::gauss_legendre(8);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 14);
  EXPECT_NEAR(s, 2.0 / 15.0, 1e-15);
  const double v = core::integrate_panels([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 16, 16);
  EXPECT_NEAR(v, std::sqrt(kPi), 1e-14);
}

TEST(PartialFourier, RoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  const auto g = core::make_grid(-2, 2, 9, -4, 4, 32);
  std::vector<cplx> v(g.size());
  for (auto& z : v) z = cplx(n(rng), n(rng));
  const Field f(g, v, FieldKind::complex);
  const Field back = core::inverse_partial_ft_p(core::partial_ft_p(f), FieldKind::complex);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(back.values()[i] - v[i]));
  EXPECT_LT(err, 1e-13);
}

TEST(PartialFourier, GaussianKernel) {
  // integral exp(-p^2/2) exp(2ipy) dp = sqrt(2 pi) exp(-2 y^2)
  const auto g = core::make_grid(-1, 1, 3, -12, 12, 128);
  const auto w = core::partial_ft_p(Field::sample(g, [](double, double p) { return std::exp(-0.5 * p * p); }));
  for (std::size_t m = 0; m < w.y().n; m += 7) {
    const double y = w.y().at(m);
    EXPECT_NEAR(w(1, m).real(), std::sqrt(2 * kPi) * std::exp(-2 * y * y), 1e-12) << y;
  }
  EXPECT_LT(w.hermiticity_defect(), 1e-14);
}

TEST(PartialFourier, PureStateKernelMatchesSampledKernel) {
  const auto psi = [](double x) { return cplx(std::exp(-x * x / 2.0) * std::cos(x), std::exp(-x * x / 2.0) * 0.3 * x); };
  const auto g = core::make_grid(-4, 4, 65, -16, 16, 128);
  const auto kernel = core::sample_kernel(psi, g.x(), g.p());
  const Field rho = core::inverse_partial_ft_p(kernel, FieldKind::real_expected);
  const auto again = core::partial_ft_p(rho);
  double err = 0.0;
  for (std::size_t i = 0; i < kernel.values().size(); ++i) {
    err = std::max(err, std::abs(again.values()[i] - kernel.values()[i]));
  }
  EXPECT_LT(err, 1e-13);
}

TEST(KernelMatrix, PureStateHasRankOne) {
  const auto psi = [](double x) { return cplx(std::exp(-x * x / 2.0) * std::cos(2 * x), 0.0); };
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8, 8, 513, -127.5 * dp, 127.5 * dp, 256);
  const auto kernel = core::sample_kernel(psi, g.x(), g.p());
  const auto window = core::aligned_window(kernel, -2.0, 2.0);
  ASSERT_GE(window.n, 2u);
  const Eigen::MatrixXcd K = core::kernel_to_matrix(kernel, window);
  for (std::size_t i = 0; i < window.n; i += 5) {
    for (std::size_t j = 0; j < window.n; j += 3) {
      const cplx expected = psi(window.at(i)) * std::conj(psi(window.at(j)));
      EXPECT_NEAR(std::abs(K(i, j) - expected), 0.0, 1e-13);
    }
  }
  EXPECT_THROW(core::kernel_to_matrix(kernel, core::MatrixWindow{-9.0, 0.5, 10}), WindowError);
}

TEST(SpectralDerivative, GaussianDerivatives) {
  const auto g = core::make_grid(-10, 10, 257, -1, 1, 3);
  const Field f = Field::sample(g, [](double x, double) { return std::exp(-x * x); });
  const Field d1 = core::x_derivative(f, 1);
  const Field d2 = core::x_derivative(f, 2);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t ix = 0; ix < g.x().size(); ++ix) {
    const double x = g.x().at(ix);
    e1 = std::max(e1, std::abs(d1(ix, 1) - cplx(-2 * x * std::exp(-x * x))));
    e2 = std::max(e2, std::abs(d2(ix, 1) - cplx((4 * x * x - 2) * std::exp(-x * x))));
  }
  EXPECT_LT(e1, 1e-12);
  EXPECT_LT(e2, 1e-11);
}

TEST(SpectralDerivative, StencilAnnihilatesConstants) {
  for (int order : {1, 2, 3, 4}) {
    const auto s = core::spectral_derivative_stencil(64, 0.1, order);
    double sum = 0.0, scale = 0.0;
    for (double v : s) {
      sum += v;
      scale = std::max(scale, std::abs(v));
    }
    EXPECT_LT(std::abs(sum), 1e-13 * scale) << order;
  }
}
