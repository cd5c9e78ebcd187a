#include <gtest/gtest.h>

#include <cmath>

#include "dhym/error.hpp"
#include "dhym/limits.hpp"
#include "draws.hpp"

using namespace dhym;
using dhym::testing::rel_err;

namespace {

const SurfaceParams kFig = make_surface(1, 0, 5);
const BundleClass kFigB{-1, 1};
const BundleClass kSmallB{-2, -1};

}  // namespace

TEST(ScaledSolution, IdentityScaling) {
  const ScaledSample a = scaled_solution(kFig, kFigB, 1.0);
  const ProfilePoly p = smooth_coefficients(kFig, kFigB);
  EXPECT_EQ(a.profile.d0, p.d0);
  EXPECT_EQ(a.profile.alpha, p.alpha);
  EXPECT_EQ(a.dhym.Cprime, solve_dhym(kFig, kFigB).Cprime);
}

TEST(ScaledSolution, StabilityInAlphaPrime) {
  EXPECT_GT(scaled_margin(kFig, kFigB, 0.01), 0);
  EXPECT_NO_THROW(scaled_solution(kFig, kFigB, 0.01));
  EXPECT_LT(scaled_margin(kFig, kFigB, 100), 0);
  try {
    scaled_solution(kFig, kFigB, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSolution);
  }
}

TEST(ScaledSolution, GenericCprimeMatchesScaledForm) {
  for (const auto& d : dhym::testing::stable_draws(50)) {
    for (double a : {0.1, 0.5, 2.0}) {
      if (scaled_margin(d.surface, d.bundle, a) <= 0) continue;
      const double generic = integration_constants(d.surface, scale_class(d.bundle, a)).Cprime;
      EXPECT_LT(rel_err(generic, scaled_Cprime(d.surface, d.bundle, a)), 1e-12);
    }
  }
}

TEST(ScaledSolution, MarginMonotone) {
  for (const auto& d : dhym::testing::any_draws(500, 12)) {
    const double k1 = d.bundle.k1, k2 = d.bundle.k2, x = d.surface.x;
    if ((k1 + k2) * (k1 + k2) <= x * (k1 - k2) * (k1 - k2)) continue;
    EXPECT_LT(scaled_margin(d.surface, d.bundle, 0.5), scaled_margin(d.surface, d.bundle, 2.0));
  }
}

TEST(ScaledSolution, ResidualsHoldForEverySample) {
  const ScaledFamily fam = make_family(kFig, kFigB, {1e-1, 1e-2, 1e-3});
  for (const ScaledSample& s : fam.samples) {
    for (double t : uniform_grid(s.dhym.t_minus, s.dhym.t_plus, 51)) {
      EXPECT_NEAR(ode_residual_H(s.dhym, t), 0, 1e-10);
      EXPECT_NEAR(scalar_residual(s.profile, fam.surface, s.bundle, t), 0, 1e-6);
    }
  }
}

TEST(LargeRadius, AlphaLimit) {
  EXPECT_NEAR(large_radius_alpha(kFig, kFigB), -5.0 / 6.0, 1e-15);
  const ScaledSample s = scaled_solution(kFig, kFigB, 1e-4);
  EXPECT_LT(rel_err(s.profile.alpha * 1e-8, -5.0 / 6.0), 1e-3);
}

TEST(LargeRadius, Report) {
  const ConvergenceReport r = large_radius_check(make_family(kFig, kFigB, {1e-1, 1e-2, 1e-3, 1e-4}));
  ASSERT_EQ(r.points.size(), 4u);
  EXPECT_NEAR(r.fitted_order, 2.0, 0.05);
  EXPECT_LT(r.profile_cauchy_gap, 1e-6);
  EXPECT_NEAR(r.limit_constant, r.limit_constant_expected, 1e-6);
  EXPECT_LT(r.limit_constant_spread, 1e-6);
  EXPECT_NEAR(r.fit_gamma, r.fit_gamma_expected, 1e-6 * std::abs(r.fit_gamma_expected));
}

TEST(SmallRadius, Constants) {
  const SurfaceParams s = make_surface(1, 0, 5);
  const SmallRadiusConstants c = small_radius_constants(s, kSmallB);
  EXPECT_NEAR(c.C_hat, 2584.0 / 9, 1e-11);
  EXPECT_EQ(c.branch, 1);
  EXPECT_NEAR(c.limit_H(6), 0.75 * -(6 + std::sqrt(36 + 2584.0 / 9)), 1e-12);
  EXPECT_THROW(small_radius_constants(s, {-1, -1}), Error);
}

TEST(SmallRadius, LimitMatchedAtLargeAlphaPrime) {
  const SmallRadiusConstants c = small_radius_constants(kFig, kSmallB);
  const ScaledSample s = scaled_solution(kFig, kSmallB, 1e4);
  EXPECT_LT(rel_err(eval_H(s.dhym, 6) / 1e4, c.limit_H(6)), 1e-2);
}

TEST(SmallRadius, Report) {
  const ConvergenceReport r = small_radius_check(make_family(kFig, kSmallB, {1e2, 1e3, 1e4}));
  EXPECT_NEAR(r.fitted_order, 2.0, 0.05);
  EXPECT_LT(r.limit_constant_spread, 1e-6);
  EXPECT_NEAR(r.limit_constant, -2.0 / 3.0, 1e-9);
  EXPECT_LT(r.alpha_limit_rel_error, 1e-3);
  const double x = kFig.x, k1 = -2, k2 = -1;
  const double expected = std::abs(k1 * k1 - k2 * k2) * (-2 + kFig.s_sigma * x) /
                          (2 * (k1 - k2) * (k1 - k2) * k2 * k2);
  EXPECT_NEAR(small_radius_alpha(kFig, kSmallB), expected, 1e-14);
}
