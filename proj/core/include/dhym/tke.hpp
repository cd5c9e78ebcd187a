#pragma once

#include <optional>
#include <string>

#include "dhym/params.hpp"

namespace dhym {

struct TkeAnalysis {
  double gamma = 0.0;
  double F_value = 0.0;
  double H_at_1 = 0.0;
  double beta_bar = 0.0;
  double condition_residual = 0.0;
};

TkeAnalysis analyze_tke(const SurfaceParams& s, BundleClass b, double beta0);

// Ricci class with cone angles 2 pi beta0 along E0 and 2 pi beta_inf along E_inf.
CohClass ricci_class(const SurfaceParams& s, double beta0, double beta_inf);

double gamma_value(const SurfaceParams& s, double beta0);

// (1 + k1^2 + k2^2)(x - 1)(s x^2 - 3 beta0 (x + 1) + x + 3)
//   - 2 k1 k2 (-3 beta0 + s x^3 - x^2 (beta0 + s - 1) + 3)
double condition_residual(const SurfaceParams& s, BundleClass b, double beta0);

// The same condition written as F(k1, k2) * Gamma - 2(s x + 2x/(1-x)(beta0-1) - 1).
double cohomology_condition_residual(const SurfaceParams& s, BundleClass b, double beta0);

// Residuals of the two class equations for Ric + c F = lambda omega, with
// beta_inf tied to beta0, and of the identity making them coincide.
struct TwistedKeSystem {
  double first = 0.0;
  double second = 0.0;
  double compatibility = 0.0;  // 2(k' + k) - (2k + k') beta0 - k' beta_inf
};

TwistedKeSystem system_residuals(const SurfaceParams& s, BundleClass b, double beta0);

double F_value(BundleClass b);

// H(k, k', h, beta); throws Pole at beta = beta_bar.
double H_beta(int k, double kprime, int h, double beta);
double H_beta_derivative(int k, double kprime, int h, double beta);
double beta_asymptote(int k, double kprime, int h);

struct Beta0Solution {
  std::optional<double> beta0;
  double attained_lo = 0.0;  // range of H over (beta_bar, 1)
  double attained_hi = 0.0;
  std::string reason;
};

// Unique beta0 in (beta_bar, 1) with H(beta0) = F(k1, k2), by bisection to 1e-12.
Beta0Solution solve_beta0(const SurfaceParams& s, BundleClass b);

}  // namespace dhym
