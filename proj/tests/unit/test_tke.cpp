#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dhym/coupled.hpp"
#include "dhym/error.hpp"
#include "dhym/oracle.hpp"
#include "dhym/tke.hpp"
#include "draws.hpp"

using namespace dhym;

namespace {

const SurfaceParams kTke = make_surface(1, 6, 1);

}  // namespace

TEST(RicciClass, Examples) {
  CohClass c = ricci_class(make_surface(1, 0, 5), 1, 1);
  EXPECT_NEAR(c.a, 2, 1e-14);
  EXPECT_NEAR(c.b, 1, 1e-14);
  c = ricci_class(make_surface(1, 0, 5), 0.5, 1.7);
  EXPECT_NEAR(c.a, 2.2, 1e-14);
  EXPECT_NEAR(c.b, 0.3, 1e-14);
  // 2(1 - h) - k beta_inf = -10 - 1 for h = 6.
  c = ricci_class(kTke, 1, 1);
  EXPECT_NEAR(c.a, 2, 1e-14);
  EXPECT_NEAR(c.b, -11, 1e-14);
}

TEST(GammaValue, Formula) {
  const SurfaceParams s = make_surface(2, 1, 3);
  const double x = s.x;
  EXPECT_NEAR(gamma_value(s, 0.4), (3 + x + s.s_sigma * x * x - 3 * (1 + x) * 0.4) / x, 1e-14);
}

TEST(FValue, RangeCondition) {
  EXPECT_DOUBLE_EQ(F_value({-1, -1}), 2.5);
  EXPECT_DOUBLE_EQ(F_value({-2, -1}), 2.5);
  EXPECT_THROW(F_value({0, 1}), Error);
  for (const auto& d : dhym::testing::any_draws(500, 2)) {
    const double k1 = d.bundle.k1, k2 = -std::abs(d.bundle.k2);
    EXPECT_EQ(F_value({k1, k2}) > 2, 1 + (k1 + k2) * (k1 + k2) > 4 * k1 * k2);
  }
}

TEST(HBeta, MomentumFigureCurve) {
  for (double beta : uniform_grid(0, 1, 21)) {
    const double ref = (4 * beta - 16) / (2 - 9 * beta);
    EXPECT_NEAR(H_beta(1, 1, 6, beta), ref, 1e-12 * std::abs(ref));
  }
  EXPECT_EQ(beta_asymptote(1, 1, 6), 2.0 / 9.0);
  EXPECT_NEAR(H_beta(1, 1, 6, 1), 12.0 / 7.0, 1e-14);
  try {
    H_beta(1, 1, 6, 2.0 / 9.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Pole);
  }
}

TEST(HBeta, DerivativeMatchesFiniteDifference) {
  for (int k : {1, 2, 3})
    for (double kp : {0.7, 2.0, 9.0})
      for (int h : {0, 2, 6}) {
        const double bar = beta_asymptote(k, kp, h);
        const double beta = std::abs(1 - bar) > 0.1 ? 1.0 : 0.5;
        const double fd = oracle::finite_difference([&](double b) { return H_beta(k, kp, h, b); }, beta, 1, 1e-6);
        EXPECT_NEAR(H_beta_derivative(k, kp, h, beta), fd, 1e-6 * (1 + std::abs(fd)));
      }
}

TEST(HBeta, DecreasingAtOneForLargeKPrime) {
  for (int k : {1, 2, 4})
    for (int h : {0, 1, 6}) {
      const double kp = 50;
      const double fd = oracle::finite_difference([&](double b) { return H_beta(k, kp, h, b); }, 1 - 1e-4, 1, 1e-5);
      EXPECT_LT(fd, 0) << k << " " << h;
    }
}

TEST(ConditionResidual, Examples) {
  EXPECT_NEAR(condition_residual(kTke, {-1, -1}, 42.0 / 53.0), 0, 1e-12);
  EXPECT_GT(std::abs(condition_residual(kTke, {-1, -1}, 1.0)), 1e-3);
}

TEST(ConditionResidual, AgreesWithCohomologyForm) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> beta(0.05, 1.0);
  int zeros = 0;
  for (const auto& d : dhym::testing::any_draws(500, 23)) {
    const BundleClass b{d.bundle.k1, -std::abs(d.bundle.k2)};
    const Beta0Solution sol = solve_beta0(d.surface, b);
    if (sol.beta0) {
      ++zeros;
      EXPECT_NEAR(condition_residual(d.surface, b, *sol.beta0), 0, 1e-9);
      EXPECT_NEAR(cohomology_condition_residual(d.surface, b, *sol.beta0), 0, 1e-9);
      const TwistedKeSystem sys = system_residuals(d.surface, b, *sol.beta0);
      EXPECT_NEAR(sys.first, 0, 1e-9);
      EXPECT_NEAR(sys.second, 0, 1e-9);
    }
    const double bb = beta(rng);
    const double r1 = condition_residual(d.surface, b, bb);
    const double r2 = cohomology_condition_residual(d.surface, b, bb);
    EXPECT_EQ(std::abs(r1) < 1e-9, std::abs(r2) < 1e-9);
  }
  EXPECT_GT(zeros, 10);
}

TEST(SystemResiduals, CompatibilityIdentity) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> beta(0.01, 1.0);
  for (const auto& d : dhym::testing::any_draws(300, 9)) {
    const double b0 = beta(rng);
    const TwistedKeSystem sys = system_residuals(d.surface, d.bundle, b0);
    EXPECT_NEAR(sys.compatibility, 0, 1e-12 * (d.surface.k + d.surface.kprime));
  }
}

TEST(SolveBeta0, Examples) {
  Beta0Solution s = solve_beta0(kTke, {-1, -1});
  ASSERT_TRUE(s.beta0.has_value());
  EXPECT_NEAR(*s.beta0, 42.0 / 53.0, 1e-10);
  s = solve_beta0(kTke, {-2, -1});
  ASSERT_TRUE(s.beta0.has_value());
  EXPECT_NEAR(*s.beta0, 42.0 / 53.0, 1e-10);
  s = solve_beta0(kTke, {-1, 1});
  EXPECT_FALSE(s.beta0.has_value());
  EXPECT_FALSE(s.reason.empty());
}

TEST(SolveBeta0, LinearTermVanishes) {
  int found = 0;
  for (const auto& d : dhym::testing::any_draws(300, 41)) {
    const BundleClass b{d.bundle.k1, -std::abs(d.bundle.k2)};
    const Beta0Solution s = solve_beta0(d.surface, b);
    if (!s.beta0 || stability_margin(d.surface, b) <= 1e-6) continue;
    ++found;
    const ProfilePoly p = conical_coefficients(d.surface, b, *s.beta0);
    EXPECT_NEAR(p.d1, 0, 1e-8 * (1 + std::abs(p.d0)));
  }
  EXPECT_GT(found, 5);
}

TEST(AnalyzeTke, Fields) {
  const TkeAnalysis a = analyze_tke(kTke, {-1, -1}, 1.0);
  EXPECT_NEAR(a.F_value, 2.5, 1e-15);
  EXPECT_NEAR(a.H_at_1, 12.0 / 7, 1e-14);
  EXPECT_EQ(a.beta_bar, 2.0 / 9);
}
