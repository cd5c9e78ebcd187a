#pragma once

#include <cstddef>
#include <vector>

#include "dhym/coupled.hpp"
#include "dhym/dhym.hpp"
#include "dhym/params.hpp"

namespace dhym {

struct ScaledSample {
  double alpha_prime = 1.0;
  BundleClass bundle;  // (alpha' k1, alpha' k2)
  DhymSolution dhym;
  ProfilePoly profile;
};

struct ScaledFamily {
  SurfaceParams surface;
  BundleClass base;
  std::vector<ScaledSample> samples;  // sorted by increasing alpha'
};

BundleClass scale_class(BundleClass b, double alpha_prime);

// 1 - x + alpha'^2 ((k1 + k2)^2 - x (k1 - k2)^2), the margin of the scaled class.
double scaled_margin(const SurfaceParams& s, BundleClass b, double alpha_prime);

// 4 alpha'^2 k1 k2 (1/(x^2 (1 + alpha'^2 (k1 - k2)^2)) - 1/(1 + alpha'^2 (k1 + k2)^2)).
double scaled_Cprime(const SurfaceParams& s, BundleClass b, double alpha_prime);

ScaledSample scaled_solution(const SurfaceParams& s, BundleClass b, double alpha_prime);
ScaledFamily make_family(const SurfaceParams& s, BundleClass b, std::vector<double> alphas);

// Limit of alpha'^2 alpha_{alpha'} as alpha' -> 0.
double large_radius_alpha(const SurfaceParams& s, BundleClass b);
// Limit of alpha'^2 alpha_{alpha'} as alpha' -> infinity.
double small_radius_alpha(const SurfaceParams& s, BundleClass b);

struct SmallRadiusConstants {
  double C_hat = 0.0;
  int branch = 1;          // sign(k1^2 - k2^2)
  double prefactor = 0.0;  // (k1^2 - k2^2) / (2 k1)

  // K_branch(t) = t + branch sqrt(t^2 + C_hat)
  double K(double t) const;
  // Limit of H_{alpha'}(t) / alpha'.
  double limit_H(double t) const { return prefactor * K(t); }
  double limit_H_prime(double t) const;
};

SmallRadiusConstants small_radius_constants(const SurfaceParams& s, BundleClass b);

struct ConvergencePoint {
  double alpha_prime = 0.0;
  double sup_error = 0.0;     // sup_t |H/alpha' - limit|
  double nu_sup = 0.0;        // sup_t |nu_{alpha'}| / alpha' (large radius only)
  double alpha_scaled = 0.0;  // alpha'^2 alpha_{alpha'}
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;
  double fitted_order = 0.0;
  double alpha_limit = 0.0;            // closed-form limit of alpha'^2 alpha
  double alpha_limit_rel_error = 0.0;  // at the sample closest to the limit
  double profile_cauchy_gap = 0.0;     // sup |psi_a - psi_b| over the two samples closest to the limit
  double limit_constant = 0.0;         // mu (large) or c1 (small), extrapolated
  double limit_constant_expected = 0.0;
  double limit_constant_spread = 0.0;  // max relative deviation over interior t
  double fit_gamma = 0.0;              // s(omega) = fit_c + fit_gamma * lambda1 lambda2
  double fit_gamma_expected = 0.0;
  double fit_c = 0.0;
  double fit_residual = 0.0;
};

ConvergenceReport large_radius_check(const ScaledFamily& fam, std::size_t grid = 201);
ConvergenceReport small_radius_check(const ScaledFamily& fam, std::size_t grid = 201);

}  // namespace dhym
