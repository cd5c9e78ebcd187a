#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dhym/error.hpp"
#include "dhym/params.hpp"
#include "draws.hpp"

using namespace dhym;
using dhym::testing::rel_err;

namespace {

// Independent arithmetic: margin from its definition with x = k/(k+k').
double margin_oracle(int k, double kp, double k1, double k2) {
  const double x = static_cast<double>(k) / (k + kp);
  return (1 + (k1 + k2) * (k1 + k2)) - x * (1 + (k1 - k2) * (k1 - k2));
}

}  // namespace

TEST(MakeSurface, DerivedQuantities) {
  SurfaceParams s = make_surface(1, 0, 5);
  EXPECT_DOUBLE_EQ(s.x, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.s_sigma, 2.0);
  s = make_surface(1, 6, 1);
  EXPECT_DOUBLE_EQ(s.x, 0.5);
  EXPECT_DOUBLE_EQ(s.s_sigma, -10.0);
  s = make_surface(2, 1, 2);
  EXPECT_DOUBLE_EQ(s.x, 0.5);
  EXPECT_EQ(s.s_sigma, 0.0);
}

TEST(MakeSurface, RejectsBadInput) {
  EXPECT_THROW(make_surface(0, 0, 1), Error);
  EXPECT_THROW(make_surface(1, 0, 0), Error);
  EXPECT_THROW(make_surface(1, -1, 1), Error);
  try {
    make_surface(1, 0, -2);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
  }
}

TEST(StabilityMargin, Examples) {
  EXPECT_NEAR(stability_margin(make_surface(1, 0, 5), {-1, 1}), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(stability_margin(make_surface(1, 0, 4), {-1, 1}), 0.0, 1e-15);
  SurfaceParams s09;
  s09.x = 0.9;
  EXPECT_NEAR(stability_margin(s09, {0.5, 0.5}), 1.1, 1e-15);
}

TEST(StabilityMargin, MatchesDefinitionOnDraws) {
  for (const auto& d : dhym::testing::any_draws(500)) {
    const double m = margin_oracle(d.surface.k, d.surface.kprime, d.bundle.k1, d.bundle.k2);
    EXPECT_NEAR(stability_margin(d.surface, d.bundle), m, 1e-12 * (1 + std::abs(m)));
  }
}

TEST(Classify, Bands) {
  EXPECT_EQ(classify(1.0 / 6.0), StabilityClass::Stable);
  EXPECT_EQ(classify(0.0), StabilityClass::Semistable);
  EXPECT_EQ(classify(-0.3), StabilityClass::Unstable);
  EXPECT_EQ(classify(5e-13), StabilityClass::Semistable);
  EXPECT_EQ(classify(5e-13, 1e-14), StabilityClass::Stable);
  EXPECT_STREQ(to_string(StabilityClass::Semistable), "Semistable");
}

TEST(PhaseConstant, Examples) {
  Phase p = phase_constant({-1, 1});
  EXPECT_NEAR(p.cos_theta, 1 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(p.sin_theta, 2 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(p.r_hat, std::sqrt(5.0), 1e-15);
  p = phase_constant({1, 1});
  EXPECT_NEAR(p.cos_theta, 1 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(p.sin_theta, -2 / std::sqrt(5.0), 1e-15);
  p = phase_constant({-1, 0});
  EXPECT_NEAR(p.cos_theta, 0.0, 1e-15);
  EXPECT_NEAR(p.sin_theta, 1.0, 1e-15);
  EXPECT_NEAR(p.r_hat, 2.0, 1e-15);
}

TEST(PhaseConstant, SHatNeedsSurface) {
  EXPECT_TRUE(std::isnan(phase_constant({-1, 1}).s_hat));
  const SurfaceParams s = make_surface(1, 0, 5);
  EXPECT_DOUBLE_EQ(phase_constant({-1, 1}, s).s_hat, 2 * s.x * s.s_sigma + 2);
}

TEST(PhaseConstant, PropertiesOnDraws) {
  for (const auto& d : dhym::testing::any_draws(1000, 11)) {
    const auto [k1, k2] = d.bundle;
    const Phase p = phase_constant(d.bundle);
    EXPECT_NEAR(p.cos_theta * p.cos_theta + p.sin_theta * p.sin_theta, 1.0, 1e-14);
    EXPECT_GT(p.sin_theta, 0.0);
    const double a = 1 - k1 * k1 + k2 * k2;
    EXPECT_LT(rel_err(p.r_hat * p.r_hat, a * a + 4 * k1 * k1), 1e-12);
    const Phase q = phase_constant({-k1, -k2});
    EXPECT_EQ(q.cos_theta, p.cos_theta);
    EXPECT_EQ(q.sin_theta, -p.sin_theta);
    EXPECT_EQ(q.r_hat, p.r_hat);
  }
}

TEST(Canonicalize, FlipsPositiveK1) {
  CanonicalBundle c = canonicalize({1, 2});
  EXPECT_TRUE(c.conjugated);
  EXPECT_EQ(c.cls.k1, -1);
  EXPECT_EQ(c.cls.k2, -2);
  c = canonicalize({-1, 2});
  EXPECT_FALSE(c.conjugated);
  EXPECT_EQ(c.cls.k2, 2);
}

TEST(Canonicalize, RejectsDegenerateClasses) {
  try {
    canonicalize({0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateBundle);
    EXPECT_NE(std::string(e.what()).find("degenerate bundle class"), std::string::npos);
  }
  EXPECT_THROW(canonicalize({-1, 0}), Error);
}

TEST(CohomologyClasses, Examples) {
  CohomologyClasses c = cohomology_classes(make_surface(1, 0, 5), {-1, 1});
  EXPECT_DOUBLE_EQ(c.omega.a, 2);
  EXPECT_DOUBLE_EQ(c.omega.b, 5);
  EXPECT_NEAR(c.F.a, -4, 1e-14);
  EXPECT_NEAR(c.F.b, 2, 1e-14);
  EXPECT_TRUE(is_integral(c.F));
  // b = k' k1 + (2k + k') k2, the same expression that gives (-4, 2) above.
  c = cohomology_classes(make_surface(1, 0, 1), {0.25, 0.25});
  EXPECT_NEAR(c.F.a, 0, 1e-15);
  EXPECT_NEAR(c.F.b, 1.0, 1e-15);
  EXPECT_FALSE(is_integral(cohomology_classes(make_surface(1, 0, 1), {0.3, 0.3}).F));
  const SurfaceParams s = make_surface(3, 1, 2.5);
  c = cohomology_classes(s, {-1.5, 0});
  EXPECT_NEAR(c.F.a, -1.5 * 2, 1e-14);
  EXPECT_NEAR(c.F.b, -1.5 * 2.5, 1e-14);
}

TEST(IntersectionPairing, Basis) {
  EXPECT_EQ(intersection_pairing({1, 0}, {1, 0}, 1), 1);
  EXPECT_EQ(intersection_pairing({1, 0}, {1, 0}, 3), 3);
  EXPECT_EQ(intersection_pairing({0, 1}, {0, 1}, 1), 0);
  EXPECT_EQ(intersection_pairing({1, 0}, {0, 1}, 2), 1);
  EXPECT_EQ(intersection_pairing({2, 5}, {2, 5}, 1), 24);
}

TEST(IntersectionPairing, VolumeAndPrimitivePart) {
  const double four_pi_sq = 4 * std::numbers::pi * std::numbers::pi;
  for (const auto& d : dhym::testing::any_draws(200, 3)) {
    const SurfaceParams& s = d.surface;
    const CohomologyClasses c = cohomology_classes(s, d.bundle);
    const double vol = intersection_pairing(c.omega, c.omega, s.k) * four_pi_sq;
    EXPECT_LT(rel_err(vol, 16 * std::numbers::pi * std::numbers::pi * s.k / s.x), 1e-12);
    const double x = s.x, k2 = d.bundle.k2;
    // F - k1 omega = k2 (1 - x^2)/x^2 * beta with beta the primitive class.
    const double f = x * x / ((1 - x * x) * k2);
    const CohClass beta{f * (c.F.a - d.bundle.k1 * c.omega.a), f * (c.F.b - d.bundle.k1 * c.omega.b)};
    const double expected = -16 * std::numbers::pi * std::numbers::pi * s.k * x * x * x /
                            ((1 - x * x) * (1 - x * x));
    EXPECT_LT(rel_err(intersection_pairing(beta, beta, s.k) * four_pi_sq, expected), 1e-12)
        << "k=" << s.k << " x=" << x;
  }
}

TEST(JacobYauClass, SignAgreesWithMargin) {
  EXPECT_TRUE(jy_class(make_surface(1, 0, 5), {-1, 1}).is_positive);
  const JacobYauClass semi = jy_class(make_surface(1, 0, 4), {-1, 1});
  EXPECT_FALSE(semi.is_positive);
  EXPECT_TRUE(semi.omega_class.a == 0 || semi.omega_class.b == 0);
  SurfaceParams s09 = make_surface(9, 0, 1);
  EXPECT_LT(stability_margin(s09, {-2, 3}), 0);
  EXPECT_FALSE(jy_class(s09, {-2, 3}).is_positive);
  for (const auto& d : dhym::testing::any_draws(2000, 5)) {
    const double m = stability_margin(d.surface, d.bundle);
    if (std::abs(m) < 1e-9) continue;
    EXPECT_EQ(m > 0, jy_class(d.surface, d.bundle).is_positive);
  }
}

TEST(FromComplexified, Examples) {
  ComplexifiedClass c = from_complexified(1, 0, 1, -1);
  EXPECT_DOUBLE_EQ(c.bundle.k1, -0.25);
  EXPECT_DOUBLE_EQ(c.bundle.k2, -0.25);
  EXPECT_DOUBLE_EQ(c.surface.x, 0.5);
  EXPECT_FALSE(c.canonical.conjugated);
  ComplexifiedClass d = from_complexified(1, 0, 1, 1);
  EXPECT_TRUE(d.canonical.conjugated);
  EXPECT_EQ(d.canonical.cls.k1, c.canonical.cls.k1);
  EXPECT_EQ(d.canonical.cls.k2, c.canonical.cls.k2);
  EXPECT_THROW(from_complexified(1, 0, 1, 0), Error);
}

TEST(FromComplexified, AlwaysStable) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> kp(0.1, 50), kpp(-20, 20);
  for (int i = 0; i < 500; ++i) {
    const double v = kpp(rng);
    if (v == 0) continue;
    const int k = 1 + i % 5;
    const ComplexifiedClass c = from_complexified(k, i % 4, kp(rng), v);
    const double m = stability_margin(c.surface, c.bundle);
    EXPECT_NEAR(m, 1 + std::pow(v / (k + c.surface.kprime), 2) - c.surface.x, 1e-12);
    EXPECT_EQ(classify(m), StabilityClass::Stable);
  }
}

TEST(BfieldAlpha, Examples) {
  EXPECT_NEAR(bfield_alpha(1, 0, 1, 1, 1.0), -4 * std::sqrt(5.0), 1e-12);
  EXPECT_GT(bfield_alpha(1, 0, 100, 1, 0.05), 0.0);
}

TEST(BfieldAlpha, ZeroAtBracketRoot) {
  // alpha(beta0) is affine-over-constant in beta0 for the k1 = k2 case, so the root
  // of the bracket is found by bisection on a sign change.
  const int k = 1, h = 0;
  const double kp = 100, kpp = 1;
  double lo = 0.05, hi = 1.0;
  ASSERT_GT(bfield_alpha(k, h, kp, kpp, lo), 0);
  ASSERT_LT(bfield_alpha(k, h, kp, kpp, hi), 0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (bfield_alpha(k, h, kp, kpp, mid) > 0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(bfield_alpha(k, h, kp, kpp, lo), 0.0, 1e-12 * std::abs(bfield_alpha(k, h, kp, kpp, 0.05)));
}
