#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "starwall/core/errors.hpp"
#include "starwall/specfun/bessel.hpp"
#include "starwall/specfun/log_gamma.hpp"
#include "starwall/specfun/meijer_g.hpp"

using namespace starwall;
using namespace starwall::specfun;

// Reference values from mpmath at 30 digits.
TEST(LogGamma, MatchesReferenceValues) {
  struct Case {
    cplx z;
    cplx expected;
  };
  const Case cases[] = {
      {{1.0, 1.0}, {-0.65092319930185634, -0.3016403204675332}},
      {{0.5, -3.0}, {-3.7934504504362232, -0.30981927108643917}},
      {{-2.5, 0.7}, {-1.4941873089113575, -8.6464756828033773}},
      {{10.0, 25.0}, {-7.5528452935741365, 68.632026585242168}},
      {{0.01, 0.02}, {3.7944367207828294, -1.1183633070517473}},
  };
  for (const auto& c : cases) {
    const cplx v = log_gamma(c.z);
    EXPECT_NEAR(v.real(), c.expected.real(), 1e-13 * std::max(1.0, std::abs(c.expected))) << c.z;
    EXPECT_NEAR(v.imag(), c.expected.imag(), 1e-13 * std::max(1.0, std::abs(c.expected))) << c.z;
  }
}

TEST(LogGamma, RealAxis) {
  EXPECT_NEAR(log_gamma(0.5).real(), 0.5 * std::log(kPi), 1e-15);
  EXPECT_NEAR(std::abs(specfun::gamma(cplx(5.0)) - 24.0), 0.0, 1e-12);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  try {
    log_gamma(-3.0);
  } catch (const PoleError& e) {
    EXPECT_EQ(e.pole(), -3);
  }
}

TEST(LogGamma, RecurrenceProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const cplx z(re(rng), im(rng));
    if (std::abs(z.imag()) < 0.1) continue;
    const cplx d = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    EXPECT_LT(std::abs(d), 1e-11 * std::max(1.0, std::abs(log_gamma(z)))) << z;
  }
}

TEST(LogGamma, ReflectionProperty) {
  // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(-4.0, 4.0);
  for (int i = 0; i < 100; ++i) {
    const cplx z(re(rng), im(rng));
    const cplx lhs = gamma(z) * gamma(1.0 - z);
    const cplx rhs = kPi / std::sin(kPi * z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs)) << z;
  }
}

TEST(BesselKImagOrder, MatchesReferenceValues) {
  struct Case {
    double mu, z, expected;
  };
  const Case cases[] = {
      {1.0, 0.5, 0.48339609004387797},   {1.0, 3.0, 0.030008658928584475},
      {0.25, 1e-4, 2.7388924496554991},  {4.0, 0.1, 0.0023123934564696376},
      {1.0, 20.0, 5.6027857553464753e-10}, {0.5, 2.5, 0.0597341327184858},
  };
  for (const auto& c : cases) {
    EXPECT_NEAR(bessel_k_imag_order(c.mu, c.z), c.expected, 1e-13 * std::max(1e-3, std::abs(c.expected)))
        << c.mu << " " << c.z;
  }
}

TEST(BesselKImagOrder, SeriesAndQuadratureJoinContinuously) {
  for (double mu : {0.05, 0.3, 1.0, 7.0}) {
    const double below = bessel_k_imag_order(mu, 2.0);
    const double above = bessel_k_imag_order(mu, std::nextafter(2.0, 3.0));
    EXPECT_NEAR(below, above, 1e-13) << mu;
  }
}

TEST(BesselKImagOrder, EvenInOrderAndDomain) {
  EXPECT_EQ(bessel_k_imag_order(1.3, 0.7), bessel_k_imag_order(-1.3, 0.7));
  EXPECT_EQ(bessel_k_imag_order(1.0, 800.0), 0.0);
  EXPECT_THROW(bessel_k_imag_order(1.0, 0.0), DomainError);
  EXPECT_THROW(bessel_k_imag_order(60.0, 1.0), DomainError);
}

namespace {

GParams conjugate(cplx b1, cplx b2) { return GParams::conjugate_pairs({b1, std::conj(b1), b2, std::conj(b2)}); }

}  // namespace

TEST(MeijerG, ContourMatchesReferenceValues) {
  const MellinBarnesSpec spec;
  struct Case {
    double w;
    GParams params;
    double expected;
  };
  const Case cases[] = {
      {0.1, conjugate({0.1, 0.3}, {0.0, 0.7}), 0.57748047480813692},
      {2.0, conjugate({0.0, 0.5}, {0.0, 1.5}), 0.0069835914902866369},
      {0.01, conjugate({0.0, 0.25}, {0.0, 0.75}), 2.0271481346113857},
  };
  for (const auto& c : cases) {
    const GResult r = meijer_g04_contour(c.w, c.params, spec);
    EXPECT_NEAR(r.value.real(), c.expected, 1e-10 * std::abs(c.expected)) << c.w;
    EXPECT_LT(std::abs(r.value.imag()), 1e-12 * std::abs(c.expected));
    EXPECT_GT(r.noise_floor, 0.0);
  }
}

TEST(MeijerG, SeriesMatchesReferenceValues) {
  const GResult a = meijer_g04_series(0.1, conjugate({0.1, 0.3}, {0.0, 0.7}));
  EXPECT_NEAR(a.value.real(), 0.57748047480813692, 1e-12);
  const GResult b = meijer_g04_series(0.01, conjugate({0.0, 0.25}, {0.0, 0.75}));
  EXPECT_NEAR(b.value.real(), 2.0271481346113857, 1e-12);
}

TEST(MeijerG, ContourAndSeriesAgreeOnRandomParameters) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t(-2.0, 2.0), lw(-8.0, -1.5);
  const MellinBarnesSpec spec;
  int checked = 0;
  while (checked < 40) {
    const GParams params = conjugate({0.0, t(rng)}, {0.0, t(rng)});
    if (params.min_integer_separation() < 0.05) continue;
    const cplx log_w = lw(rng);
    const cplx s = meijer_g04_series_log(log_w, params).value;
    const cplx c = meijer_g04_contour_log(log_w, params, spec).value;
    EXPECT_LT(std::abs(s - c), 1e-8 * std::abs(s)) << log_w;
    ++checked;
  }
}

TEST(MeijerG, EulerDerivativeMatchesFiniteDifference) {
  const GParams params = conjugate({0.0, 0.4}, {0.0, 1.1});
  const MellinBarnesSpec spec;
  const double lw = -2.0, h = 1e-4;
  const cplx d = meijer_g04_contour_log(lw, params, spec, 1).value;
  const cplx fd = (meijer_g04_contour_log(lw + h, params, spec).value -
                   meijer_g04_contour_log(lw - h, params, spec).value) / (2 * h);
  EXPECT_LT(std::abs(d - fd), 1e-7 * std::abs(d));
}

TEST(MeijerG, RejectsInvalidInput) {
  const GParams params = conjugate({0.0, 0.4}, {0.0, 1.1});
  EXPECT_THROW(meijer_g04_series(2.0, params), DomainError);
  EXPECT_THROW(meijer_g04_series(0.1, conjugate({0.0, 0.5}, {0.0, 0.5})), DegenerateParameterError);
  EXPECT_THROW(GParams::conjugate_pairs({cplx(0, 1), cplx(0, 1), cplx(0, 2), cplx(0, -2)}), ConfigError);
  EXPECT_THROW(meijer_g04_contour_log(cplx(0.0, 7.0), params, {}), BranchDomainError);
  EXPECT_THROW((MellinBarnesSpec{0.5, 12.0, 512}.validate()), ConfigError);
}
