#pragma once

#include <cstddef>
#include <utility>

#include "dhym/dhym.hpp"
#include "dhym/params.hpp"

namespace dhym {

// psi(t) = d0 + d1 t + c2 t^2 + c3 t^3 + cR (t^2 + C')^{3/2}, with psi = 2 t phi.
//
// The five-term coefficients blow up when sin(theta) is small (cR ~ 1/sin^2),
// so evaluation goes through the equivalent basis
//   psi = d0 + e1 t + c2 t^2 + e3 t^3 + kappa Q(t),
//   Q(t) = t^3 + (3/2) C' t - (t^2 + C')^{3/2} = -(C'/(t + r))^2 (r + t/2),
// with kappa = -cR, e3 = c3 - kappa, e1 = d1 - (3/2) kappa C', r = sqrt(t^2 + C').
struct ProfilePoly {
  double d0 = 0.0, d1 = 0.0, c2 = 0.0, c3 = 0.0, cR = 0.0;
  double Cprime = 0.0;
  double t_minus = 0.0, t_plus = 0.0;
  double beta0 = 1.0, beta_inf = 1.0;
  double alpha = 0.0;
  Regularity regularity = Regularity::Smooth;

  double kappa = 0.0, e1 = 0.0, e3 = 0.0;
};

// Builds a profile from the five published coefficients (for rounded inputs).
ProfilePoly make_profile(double d0, double d1, double c2, double c3, double cR, double Cprime,
                         double t_minus, double t_plus, double beta0 = 1.0, double alpha = 0.0,
                         Regularity regularity = Regularity::Smooth);

double beta_infinity(double x, double beta0);

double smooth_alpha(const SurfaceParams& s, BundleClass b);
double conical_alpha(const SurfaceParams& s, BundleClass b, double beta0);

ProfilePoly smooth_coefficients(const SurfaceParams& s, BundleClass b,
                                double tol = kDefaultStabilityTol);
ProfilePoly conical_coefficients(const SurfaceParams& s, BundleClass b, double beta0,
                                 double tol = kDefaultStabilityTol);

double eval_psi(const ProfilePoly& p, double t);
double eval_psi_deriv(const ProfilePoly& p, double t, int order);
double eval_phi(const ProfilePoly& p, double t);

// Literal evaluation in the five-term basis; only sensible for moderate coefficients.
double eval_psi_monomial(const ProfilePoly& p, double t);

enum class PositivityMethod { ConvexityCertified, GridVerified, Failed };
const char* to_string(PositivityMethod m) noexcept;

// min_value is the minimum of psi(t) / ((t - t_minus)(t_plus - t)) over the closed
// interval (endpoint values are the one-sided slope limits), which is positive
// exactly when psi > 0 on the interior with non-degenerate boundary slopes.
struct PositivityReport {
  PositivityMethod method = PositivityMethod::Failed;
  double min_value = 0.0;
  double argmin = 0.0;
};

PositivityReport positivity_certificate(const ProfilePoly& p, std::size_t grid = 1001,
                                        double refine_width = 1e-10);

// (2 s_Sigma - psi'')/t - alpha (re - r_hat) - s_hat, with re the real part below.
double scalar_residual(const ProfilePoly& p, const SurfaceParams& s, BundleClass b, double t);

struct PhaseRadius {
  double im_part = 0.0;
  double re_part = 0.0;
};

PhaseRadius phase_and_radius(const DhymSolution& dh, double t, Branch branch = Branch::Minus);

// Closed forms used as independent cross-checks of the linear-system values.
namespace closed_form {

double smooth_d0(const SurfaceParams& s, BundleClass b);
double smooth_d1(const SurfaceParams& s, BundleClass b);
double conical_d0(const SurfaceParams& s, BundleClass b, double beta0);
// psi''(t_minus) - psi''(t_plus) as a rational function of (k1, k2, x, s_Sigma, beta0).
double second_derivative_gap(const SurfaceParams& s, BundleClass b, double beta0);

}  // namespace closed_form

}  // namespace dhym
