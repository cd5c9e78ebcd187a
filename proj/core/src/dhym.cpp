#include "dhym/dhym.hpp"

#include <cmath>

#include "dhym/error.hpp"

namespace dhym {

namespace {

struct Canon {
  double cot;    // cot(theta) of the canonical (k1 < 0) class
  double cs;     // sqrt(cot^2 + 1) = 1/sin(theta)
  double sigma;  // -1 when the supplied class was conjugated
};

Canon canon_of(const DhymSolution& sol) {
  const double sigma = sol.conjugated ? -1.0 : 1.0;
  const double cot = sigma * sol.cot_theta;
  return {cot, std::hypot(cot, 1.0), sigma};
}

void check_domain(const DhymSolution& sol, double t) {
  const double slack = 1e-12 * sol.t_plus;
  if (!(t >= sol.t_minus - slack && t <= sol.t_plus + slack))
    throw Error(ErrorKind::Domain, "t outside [t_minus, t_plus]", t);
}

double radicand(const DhymSolution& sol, double t) {
  const double u = t * t + sol.Cprime;
  return u > 0.0 ? u : 0.0;
}

// Canonical H_-; when cot > 0 the two terms cancel, so use the conjugate form.
double h_minus(const Canon& c, double Cp, double t, double r) {
  if (c.cot > 0.0) return (-t * t - c.cs * c.cs * Cp) / (t * c.cot + c.cs * r);
  return t * c.cot - c.cs * r;
}

double h_plus(const Canon& c, double Cp, double t, double r) {
  if (c.cot < 0.0) return (-t * t - c.cs * c.cs * Cp) / (t * c.cot - c.cs * r);
  return t * c.cot + c.cs * r;
}

double h_minus_prime(const Canon& c, double Cp, double t, double r) {
  if (c.cot > 0.0) return (c.cot * c.cot * Cp - t * t) / (r * (c.cot * r + c.cs * t));
  return c.cot - c.cs * t / r;
}

double h_plus_prime(const Canon& c, double Cp, double t, double r) {
  if (c.cot < 0.0) return (c.cot * c.cot * Cp - t * t) / (r * (c.cot * r - c.cs * t));
  return c.cot + c.cs * t / r;
}

}  // namespace

const char* to_string(Regularity r) noexcept {
  return r == Regularity::Smooth ? "Smooth" : "Holder12";
}

IntegrationConstants integration_constants(const SurfaceParams& s, BundleClass b) {
  canonicalize(b);  // validation only; C' is invariant under the symmetry
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double A = 1.0 + (k1 + k2) * (k1 + k2);
  const double B = 1.0 + (k1 - k2) * (k1 - k2);
  const Phase ph = phase_constant(b);
  IntegrationConstants ic;
  ic.C = -2.0 * k2 * (A - x * x * B) / (x * x * ph.r_hat);
  ic.Cprime = ic.C * ph.sin_theta;
  return ic;
}

DhymSolution solve_dhym(const SurfaceParams& s, BundleClass b, double tol) {
  const CanonicalBundle cb = canonicalize(b);
  const double margin = stability_margin(s, b);
  const StabilityClass cls = classify(margin, tol);
  if (cls == StabilityClass::Unstable)
    throw Error(ErrorKind::NoSolution, "class is unstable (margin < 0)", margin);

  DhymSolution sol;
  sol.phase = phase_constant(b, s);
  sol.cot_theta = sol.phase.cot();
  sol.t_minus = 1.0 / s.x - 1.0;
  sol.t_plus = 1.0 / s.x + 1.0;
  sol.conjugated = cb.conjugated;
  if (cls == StabilityClass::Semistable) {
    sol.regularity = Regularity::Holder12;
    sol.Cprime = -sol.t_minus * sol.t_minus;
  } else {
    sol.regularity = Regularity::Smooth;
    sol.Cprime = integration_constants(s, b).Cprime;
  }
  return sol;
}

double eval_H(const DhymSolution& sol, double t, Branch branch) {
  check_domain(sol, t);
  const Canon c = canon_of(sol);
  const double r = std::sqrt(radicand(sol, t));
  const double h = branch == Branch::Minus ? h_minus(c, sol.Cprime, t, r)
                                           : h_plus(c, sol.Cprime, t, r);
  return c.sigma * h;
}

double eval_H_prime(const DhymSolution& sol, double t, Branch branch) {
  check_domain(sol, t);
  const Canon c = canon_of(sol);
  const double r = std::sqrt(radicand(sol, t));
  if (r == 0.0) throw Error(ErrorKind::Domain, "H' is unbounded where t^2 + C' = 0", t);
  const double hp = branch == Branch::Minus ? h_minus_prime(c, sol.Cprime, t, r)
                                            : h_plus_prime(c, sol.Cprime, t, r);
  return c.sigma * hp;
}

BoundaryTargets boundary_targets(const SurfaceParams& s, BundleClass b) {
  const double x = s.x;
  BoundaryTargets bt;
  bt.at_t_minus = b.k1 * (1.0 - x) / x + b.k2 * (1.0 + x) / x;
  bt.at_t_plus = b.k1 * (1.0 + x) / x + b.k2 * (1.0 - x) / x;
  return bt;
}

double ode_residual_H(const DhymSolution& sol, double t, Branch branch) {
  const double H = eval_H(sol, t, branch);
  const double Hp = eval_H_prime(sol, t, branch);
  const double sn = sol.phase.sin_theta, cs = sol.phase.cos_theta;
  return Hp * (H * sn - t * cs) - (t * sn + H * cs);
}

double dhym_rhs(const Phase& phase, double t, double H) {
  const double den = H * phase.sin_theta - t * phase.cos_theta;
  if (den == 0.0) throw Error(ErrorKind::IntegrationFailure, "H sin - t cos vanishes", t);
  return (t * phase.sin_theta + H * phase.cos_theta) / den;
}

double eval_nu(const DhymSolution& sol, const SurfaceParams& s, BundleClass b, double t) {
  const double x = s.x;
  return b.k1 * t + (b.k2 / t) * (1.0 - x * x) / (x * x) - eval_H(sol, t);
}

std::vector<double> uniform_grid(double a, double b, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::Validation, "grid needs at least two points");
  std::vector<double> g(n);
  const double step = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + step * static_cast<double>(i);
  g.back() = b;
  return g;
}

}  // namespace dhym
