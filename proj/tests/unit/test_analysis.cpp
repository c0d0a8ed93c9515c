#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "starwall/analysis/convergence.hpp"
#include "starwall/analysis/free_family.hpp"
#include "starwall/analysis/purity.hpp"
#include "starwall/analysis/robin.hpp"
#include "starwall/analysis/suppression.hpp"
#include "starwall/core/errors.hpp"
#include "starwall/states/closed_forms.hpp"
#include "starwall/states/wavefunctions.hpp"
#include "starwall/states/wigner.hpp"

using namespace starwall;
using namespace starwall::analysis;

TEST(Convergence, DistanceShrinksWithSteepness) {
  Window w;
  w.n_x = 10;
  w.n_p = 12;
  const auto r = convergence_study({2.0, 4.0, 8.0}, 1.0, w);
  ASSERT_EQ(r.distances.size(), 3u);
  EXPECT_TRUE(r.monotone);
  EXPECT_GT(r.distances[0], r.distances[1]);
  EXPECT_GT(r.distances[1], r.distances[2]);
  std::ostringstream csv;
  r.write_csv(csv);
  EXPECT_EQ(csv.str().substr(0, 21), "alpha,distance,scale\n");
  EXPECT_EQ(r.to_json()["alphas"].size(), 3u);
}

TEST(Convergence, RejectsBadInput) {
  Window w;
  w.x_max = 0.5;
  EXPECT_THROW(convergence_study({2.0}, 1.0, w), ConfigError);
  EXPECT_THROW(convergence_study({4.0, 2.0}, 1.0), ConfigError);
}

TEST(Suppression, RatioFallsWithSteepness) {
  const auto r = wall_suppression_study({2.0, 4.0}, 1.0, 0.5);
  EXPECT_TRUE(r.decreasing);
  EXPECT_NEAR(r.ratios[0], 0.01569, 5e-5);
  EXPECT_NEAR(r.ratios[1], 5.625e-4, 2e-6);
  EXPECT_EQ(default_p_samples().size(), 25u);
  EXPECT_THROW(wall_suppression_study({2.0}, 1.0, 0.0), ConfigError);
}

TEST(Purity, PureHalfLineStateHasRankOne) {
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8.0, 0.0, 257, -127.5 * dp, 127.5 * dp, 256);
  const auto rho = states::wigner_transform_grid([](double x) { return cplx(states::psi_wall(1.0, x)); }, g);
  const auto r = purity_check(rho, -7.0, -1.0);
  EXPECT_LT(r.purity_metric, 1e-8);
  EXPECT_LT(r.kernel_hermiticity, 1e-12);
  EXPECT_EQ(r.to_json()["singular_values"].size(), 8u);
}

TEST(Purity, MixtureHasRankTwo) {
  const double dp = kPi / 16.0;
  const auto g = core::make_grid(-8.0, 8.0, 513, -127.5 * dp, 127.5 * dp, 256);
  const auto psi0 = [](double x) { return cplx(std::exp(-x * x / 2)); };
  const auto psi1 = [](double x) { return cplx(std::sqrt(2.0) * x * std::exp(-x * x / 2)); };
  const auto a = states::wigner_transform_grid(psi0, g);
  const auto b = states::wigner_transform_grid(psi1, g);
  std::vector<cplx> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (a.values()[i] + b.values()[i]);
  const auto r = purity_check(core::Field(g, v, core::FieldKind::complex), -5.0, 5.0);
  EXPECT_GT(r.purity_metric, 0.5);
}

TEST(Purity, WindowTooSmallThrows) {
  const auto g = core::make_grid(-2.0, 2.0, 9, -2.0, 2.0, 8);
  EXPECT_THROW(purity_check(core::Field::zeros(g), 0.0, 0.01), WindowError);
}

TEST(Purity, InterferenceScanFindsPureModulus) {
  const double a_plus = 1.0, a_minus = 0.64, pure = 0.8;
  std::vector<double> moduli;
  for (int i = 0; i <= 10; ++i) moduli.push_back(pure * (0.5 + 0.1 * i));
  const auto s = interference_scan(a_plus, a_minus, 1.0, 0.3, 0.05, moduli, interference_grid(1.0), -2.0, 2.0);
  EXPECT_DOUBLE_EQ(s.pure_modulus, pure);
  EXPECT_EQ(s.argmin, 5u);
  EXPECT_LT(s.metrics[5], 0.5 * std::min(s.metrics[4], s.metrics[6]));
}

TEST(Robin, WallLimitAndBoundaryProfile) {
  const auto r = robin_scan({0.0, 1.0}, 1.0);
  ASSERT_EQ(r.entries.size(), 2u);
  const auto& wall = r.entries[0];
  const auto& robin = r.entries[1];
  EXPECT_LT(wall.wall_defect, 1e-10);
  EXPECT_LT(wall.closed_form_defect, 1e-12);
  EXPECT_TRUE(wall.fourth_order.pass);
  EXPECT_TRUE(robin.fourth_order.pass);
  EXPECT_NEAR(robin.phase, -kPi / 4, 1e-15);
  double wall_slope = 0.0, robin_slope = 0.0;
  for (double s : wall.boundary_slope) wall_slope = std::max(wall_slope, std::abs(s));
  for (double s : robin.boundary_slope) robin_slope = std::max(robin_slope, std::abs(s));
  EXPECT_LT(wall_slope, 1e-12 * wall.slope_scale);
  EXPECT_GT(robin_slope, 0.1 * robin.slope_scale);
  for (std::size_t i = 0; i < robin.boundary_slope.size(); ++i) {
    EXPECT_NEAR(robin.boundary_slope[i], robin.boundary_slope_numeric[i], 1e-4);
  }
  std::ostringstream csv;
  r.write_csv(csv);
  EXPECT_EQ(csv.str().rfind("L,p,boundary_value,boundary_slope,boundary_slope_numeric\n", 0), 0u);
}

TEST(FreeFamily, CorrespondenceImprovesWithEnvelopeWidth) {
  EXPECT_DOUBLE_EQ(envelope_sigma(1.0), 1.0 / std::sqrt(2.0));
  states::StateSpec s;
  s.family = states::Family::free_superposition;
  s.amp_minus = cplx(0.6, 0.2);
  const auto g = core::make_grid(-1.0, 1.0, 5, -2.0, 2.0, 41);
  const auto r = free_correspondence(s, {10.0, 20.0}, g);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_GT(r[0].relative_error, r[1].relative_error);
  EXPECT_LT(r[1].relative_error, 5e-3);
}
