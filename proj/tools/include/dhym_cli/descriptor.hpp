#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "dhym/coupled.hpp"
#include "dhym/dhym.hpp"
#include "dhym/params.hpp"

namespace dhym::cli {

struct SolveRequest {
  int k = 1;
  int h = 0;
  double kprime = 1.0;
  double k1 = 0.0;
  double k2 = 0.0;
  bool complexified = false;
  double kpp = 0.0;
  std::optional<double> beta0;  // empty: smooth solution
  double alpha_prime = 1.0;
  double tol = kDefaultStabilityTol;
  bool allow_semistable = false;
};

struct Solved {
  SurfaceParams surface;
  BundleClass bundle;  // after complexified substitution and alpha' scaling
  double margin = 0.0;
  StabilityClass stability = StabilityClass::Stable;
  DhymSolution dhym;
  ProfilePoly profile;
};

// Resolves the request to a concrete instance. Throws dhym::Error.
Solved solve(const SolveRequest& req);

struct ResidualSummary {
  double max_dhym_residual = 0.0;
  double max_im_part = 0.0;
  double max_scalar_residual = 0.0;
  double boundary_H_error = 0.0;
  double boundary_psi_error = 0.0;
  double boundary_slope_error = 0.0;
  bool passed = false;
};

// Derivative-based checks skip t_minus for semistable instances.
ResidualSummary compute_residuals(const Solved& sol, std::size_t grid = 1001);

struct SolutionDescriptor {
  SolveRequest request;
  double x = 0.0, s_sigma = 0.0;
  double cos_theta = 0.0, sin_theta = 0.0, r_hat = 0.0, s_hat = 0.0;
  double margin = 0.0;
  StabilityClass stability = StabilityClass::Stable;
  Regularity regularity = Regularity::Smooth;
  bool conjugated = false;
  double C = 0.0, Cprime = 0.0;
  double alpha = 0.0, d0 = 0.0, d1 = 0.0, c2 = 0.0, c3 = 0.0, cR = 0.0;
  double beta0 = 1.0, beta_inf = 1.0;
  PositivityReport positivity;
  ResidualSummary residuals;
};

SolutionDescriptor describe(const SolveRequest& req, const Solved& sol, std::size_t grid = 1001);

// key = value text, every real at 17 significant digits.
std::string format_descriptor(const SolutionDescriptor& d);
SolutionDescriptor parse_descriptor(std::string_view text);

std::string format_real(double v);

}  // namespace dhym::cli
