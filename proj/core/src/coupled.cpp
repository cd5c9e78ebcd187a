#include "dhym/coupled.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "dhym/error.hpp"
#include "dhym/oracle.hpp"

namespace dhym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phase data of the canonical class together with
// K0 = 2(1 - cos) - r_hat sin^2, which is O(k^4) for small classes.
struct Geometry {
  double k1, k2;
  double A, B;
  Phase phase;
  double K0;
};

Geometry geometry(const SurfaceParams& s, BundleClass canonical) {
  Geometry g;
  g.k1 = canonical.k1;
  g.k2 = canonical.k2;
  g.A = 1.0 + (g.k1 + g.k2) * (g.k1 + g.k2);
  g.B = 1.0 + (g.k1 - g.k2) * (g.k1 - g.k2);
  g.phase = phase_constant(canonical, s);
  const double a = 1.0 - g.k1 * g.k1 + g.k2 * g.k2;
  const double r = g.phase.r_hat;
  if (a > 0.0) {
    const double d = g.k1 * g.k1 - g.k2 * g.k2;
    const double one_minus_r2 = -(2.0 * g.k1 * g.k1 + 2.0 * g.k2 * g.k2 + d * d);
    const double two_minus_r_minus_a = d + one_minus_r2 / (1.0 + r);
    g.K0 = 4.0 * g.k1 * g.k1 * two_minus_r_minus_a / (r * (r + a));
  } else {
    const double sn = g.phase.sin_theta;
    g.K0 = 2.0 * (1.0 - g.phase.cos_theta) - r * sn * sn;
  }
  return g;
}

void check_domain(const ProfilePoly& p, double t) {
  const double slack = 1e-12 * p.t_plus;
  if (!(t >= p.t_minus - slack && t <= p.t_plus + slack))
    throw Error(ErrorKind::Domain, "t outside [t_minus, t_plus]", t);
}

// psi and its first four derivatives, no domain or regularity checks.
std::array<double, 5> derivatives(const ProfilePoly& p, double t) {
  const double Cp = p.Cprime;
  const double u = std::max(0.0, t * t + Cp);
  const double r = std::sqrt(u);
  const double tr = t + r;
  const double C2 = Cp * Cp;
  const double q0 = -(Cp / tr) * (Cp / tr) * (r + 0.5 * t);
  const double q1 = 1.5 * C2 / (tr * tr);
  double q2, q3, q4;
  if (r > 0.0) {
    q2 = -3.0 * C2 / (r * tr * tr);
    q3 = 3.0 * C2 * (t + 2.0 * r) / (r * r * r * tr * tr);
    q4 = -9.0 * C2 / (u * u * r);
  } else {
    q2 = -kInf;
    q3 = kInf;
    q4 = -kInf;
  }
  const double k = p.kappa;
  auto kq = [k](double q) { return k == 0.0 ? 0.0 : k * q; };
  return {
      p.d0 + t * (p.e1 + t * (p.c2 + t * p.e3)) + kq(q0),
      p.e1 + t * (2.0 * p.c2 + 3.0 * p.e3 * t) + kq(q1),
      2.0 * p.c2 + 6.0 * p.e3 * t + kq(q2),
      6.0 * p.e3 + kq(q3),
      kq(q4),
  };
}

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

void require_close(double computed, double expected, double rel, const std::string& what) {
  if (!close(computed, expected, rel))
    throw Error(ErrorKind::Consistency,
                what + " mismatch: " + std::to_string(computed) + " vs " + std::to_string(expected),
                computed - expected);
}

ProfilePoly build_profile(const SurfaceParams& s, BundleClass b, double beta0, double alpha,
                          double tol) {
  const CanonicalBundle cb = canonicalize(b);
  const DhymSolution dh = solve_dhym(s, b, tol);
  const Geometry g = geometry(s, cb.cls);
  const double sn = g.phase.sin_theta, cs = g.phase.cos_theta;

  ProfilePoly p;
  p.Cprime = dh.Cprime;
  p.t_minus = dh.t_minus;
  p.t_plus = dh.t_plus;
  p.regularity = dh.regularity;
  p.beta0 = beta0;
  p.beta_inf = beta_infinity(s.x, beta0);
  p.alpha = alpha;
  p.c2 = s.s_sigma;
  p.kappa = alpha / (3.0 * sn * sn);
  p.e3 = -(p.kappa * g.K0 / 2.0 + g.phase.s_hat / 6.0);
  p.cR = -(alpha / 3.0) * sn * std::pow(g.phase.cot() * g.phase.cot() + 1.0, 1.5);
  p.c3 = (alpha / 3.0) * cs / (sn * sn) - (g.phase.s_hat - alpha * g.phase.r_hat) / 6.0;

  // Boundary system psi(t_-) = psi(t_+) = 0 for (d0, e1).
  p.d0 = 0.0;
  p.e1 = 0.0;
  const double rm = -derivatives(p, p.t_minus)[0];
  const double rp = -derivatives(p, p.t_plus)[0];
  const auto sol = oracle::solve_2x2(1.0, p.t_minus, 1.0, p.t_plus, rm, rp);
  p.d0 = sol[0];
  p.e1 = sol[1];
  p.d1 = p.e1 + 1.5 * p.kappa * p.Cprime;

  const double slope_plus = -2.0 * beta0 * (1.0 / s.x + 1.0);
  const double slope_minus = 2.0 * p.beta_inf * (1.0 / s.x - 1.0);
  require_close(derivatives(p, p.t_plus)[1], slope_plus, 1e-9, "psi'(t_plus)");
  require_close(derivatives(p, p.t_minus)[1], slope_minus, 1e-9, "psi'(t_minus)");
  return p;
}

}  // namespace

ProfilePoly make_profile(double d0, double d1, double c2, double c3, double cR, double Cprime,
                         double t_minus, double t_plus, double beta0, double alpha,
                         Regularity regularity) {
  ProfilePoly p;
  p.d0 = d0;
  p.d1 = d1;
  p.c2 = c2;
  p.c3 = c3;
  p.cR = cR;
  p.Cprime = Cprime;
  p.t_minus = t_minus;
  p.t_plus = t_plus;
  p.beta0 = beta0;
  p.beta_inf = beta_infinity(2.0 / (t_minus + t_plus), beta0);
  p.alpha = alpha;
  p.regularity = regularity;
  p.kappa = -cR;
  p.e3 = c3 - p.kappa;
  p.e1 = d1 - 1.5 * p.kappa * Cprime;
  return p;
}

double beta_infinity(double x, double beta0) { return (-2.0 + beta0 * (1.0 + x)) / (x - 1.0); }

double smooth_alpha(const SurfaceParams& s, BundleClass b) {
  const double k1 = b.k1, k2 = b.k2;
  const double B = 1.0 + (k1 - k2) * (k1 - k2);
  const double r = std::sqrt(4.0 * k1 * k1 + (1.0 - k1 * k1 + k2 * k2) * (1.0 - k1 * k1 + k2 * k2));
  return r / (2.0 * B * k2 * k2) * (-2.0 + s.s_sigma * s.x);
}

double conical_alpha(const SurfaceParams& s, BundleClass b, double beta0) {
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double a = -k1 * k1 + k2 * k2 + 1.0;
  const double r = std::sqrt(a * a + 4.0 * k1 * k1);
  return r * (s.s_sigma * x * x - 3.0 * beta0 * (x + 1.0) + x + 3.0) /
         (2.0 * k2 * k2 * x * ((k1 - k2) * (k1 - k2) + 1.0));
}

ProfilePoly smooth_coefficients(const SurfaceParams& s, BundleClass b, double tol) {
  const CanonicalBundle cb = canonicalize(b);
  ProfilePoly p = build_profile(s, b, 1.0, smooth_alpha(s, cb.cls), tol);
  require_close(p.d0, closed_form::smooth_d0(s, cb.cls), 1e-9, "d0 (closed form)");
  require_close(p.d1, closed_form::smooth_d1(s, cb.cls), 1e-9, "d1 (closed form)");
  return p;
}

ProfilePoly conical_coefficients(const SurfaceParams& s, BundleClass b, double beta0, double tol) {
  if (!(beta0 > 0.0 && beta0 <= 1.0))
    throw Error(ErrorKind::Validation, "beta0 must lie in (0, 1]", beta0);
  if (beta0 == 1.0) return smooth_coefficients(s, b, tol);
  const CanonicalBundle cb = canonicalize(b);
  if (beta0 < 1.0 && classify(stability_margin(s, b), tol) != StabilityClass::Stable)
    throw Error(ErrorKind::NoSolution, "conical solutions need a strictly stable class",
                stability_margin(s, b));
  ProfilePoly p = build_profile(s, b, beta0, conical_alpha(s, cb.cls, beta0), tol);
  require_close(p.d0, closed_form::conical_d0(s, cb.cls, beta0), 1e-9, "d0 (closed form)");
  return p;
}

double eval_psi(const ProfilePoly& p, double t) {
  check_domain(p, t);
  return derivatives(p, t)[0];
}

double eval_psi_deriv(const ProfilePoly& p, double t, int order) {
  if (order < 0 || order > 4) throw Error(ErrorKind::Validation, "derivative order must be 0..4", order);
  check_domain(p, t);
  if (order >= 2 && t * t + p.Cprime <= 0.0)
    throw Error(ErrorKind::Domain, "psi is only C^{1,1/2} where t^2 + C' = 0", t);
  return derivatives(p, t)[static_cast<std::size_t>(order)];
}

double eval_phi(const ProfilePoly& p, double t) { return eval_psi(p, t) / (2.0 * t); }

double eval_psi_monomial(const ProfilePoly& p, double t) {
  check_domain(p, t);
  const double u = std::max(0.0, t * t + p.Cprime);
  return p.d0 + p.d1 * t + p.c2 * t * t + p.c3 * t * t * t + p.cR * u * std::sqrt(u);
}

const char* to_string(PositivityMethod m) noexcept {
  switch (m) {
    case PositivityMethod::ConvexityCertified: return "ConvexityCertified";
    case PositivityMethod::GridVerified: return "GridVerified";
    case PositivityMethod::Failed: return "Failed";
  }
  return "Unknown";
}

PositivityReport positivity_certificate(const ProfilePoly& p, std::size_t grid,
                                        double refine_width) {
  const double a = p.t_minus, b = p.t_plus, len = b - a;
  const auto lo = derivatives(p, a);
  const auto hi = derivatives(p, b);
  const double bnd_tol = 1e-8 * std::max(1.0, std::abs(p.d0));
  const bool boundary_ok = std::abs(lo[0]) <= bnd_tol && std::abs(hi[0]) <= bnd_tol;

  auto normalized = [&](double t) {
    if (t <= a) return boundary_ok ? lo[1] / len : -kInf;
    if (t >= b) return boundary_ok ? -hi[1] / len : -kInf;
    return derivatives(p, t)[0] / ((t - a) * (b - t));
  };

  const std::vector<double> ts = uniform_grid(a, b, std::max<std::size_t>(grid, 3));
  std::size_t first = boundary_ok ? 0 : 1;
  std::size_t last = boundary_ok ? ts.size() - 1 : ts.size() - 2;
  PositivityReport rep;
  rep.min_value = kInf;
  std::size_t imin = first;
  for (std::size_t i = first; i <= last; ++i) {
    const double v = normalized(ts[i]);
    if (v < rep.min_value) {
      rep.min_value = v;
      imin = i;
    }
  }
  rep.argmin = ts[imin];

  // Golden-section refinement between the neighbours of the grid minimum.
  double l = ts[imin > first ? imin - 1 : first];
  double r = ts[imin < last ? imin + 1 : last];
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double m1 = r - phi * (r - l), m2 = l + phi * (r - l);
  double f1 = normalized(m1), f2 = normalized(m2);
  while (r - l > refine_width) {
    if (f1 < f2) {
      r = m2;
      m2 = m1;
      f2 = f1;
      m1 = r - phi * (r - l);
      f1 = normalized(m1);
    } else {
      l = m1;
      m1 = m2;
      f1 = f2;
      m2 = l + phi * (r - l);
      f2 = normalized(m2);
    }
  }
  const double tm = 0.5 * (l + r);
  const double fm = normalized(tm);
  if (fm < rep.min_value) {
    rep.min_value = fm;
    rep.argmin = tm;
  }

  const bool positive = rep.min_value > 0.0;
  const bool certificate = p.alpha <= 0.0 && p.Cprime != 0.0 && boundary_ok && lo[1] > 0.0 &&
                           hi[1] < 0.0 && lo[2] > hi[2];
  if (certificate && positive)
    rep.method = PositivityMethod::ConvexityCertified;
  else
    rep.method = positive ? PositivityMethod::GridVerified : PositivityMethod::Failed;
  return rep;
}

double scalar_residual(const ProfilePoly& p, const SurfaceParams& s, BundleClass b, double t) {
  check_domain(p, t);
  const Geometry g = geometry(s, canonicalize(b).cls);
  const double sn = g.phase.sin_theta;
  const double u = t * t + p.Cprime;
  if (u <= 0.0) throw Error(ErrorKind::Domain, "scalar residual undefined where t^2 + C' = 0", t);
  const double r = std::sqrt(u);
  const double w_minus_2 = p.Cprime * p.Cprime / (t * r * (t + r) * (t + r));
  const double psi2 = derivatives(p, t)[2];
  return (2.0 * s.s_sigma - psi2) / t - (p.alpha / (sn * sn)) * (w_minus_2 + g.K0) - g.phase.s_hat;
}

PhaseRadius phase_and_radius(const DhymSolution& dh, double t, Branch branch) {
  const double H = eval_H(dh, t, branch);
  const double Hp = eval_H_prime(dh, t, branch);
  const double sn = dh.phase.sin_theta, cs = dh.phase.cos_theta;
  const double prod = 1.0 - H * Hp / t;
  const double sum = Hp + H / t;
  return {sn * prod + cs * sum, cs * prod - sn * sum};
}

namespace closed_form {

double smooth_d0(const SurfaceParams& s, BundleClass b) {
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double B = 1.0 + (k1 - k2) * (k1 - k2);
  return -(-2.0 + s.s_sigma * x) *
         (-3.0 - 3.0 * k1 * k1 - 2.0 * k1 * k2 - 3.0 * k2 * k2 + 3.0 * B * x * x) /
         (3.0 * B * x * x * x);
}

double smooth_d1(const SurfaceParams& s, BundleClass b) {
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double B = 1.0 + (k1 - k2) * (k1 - k2);
  return -(-2.0 * (1.0 + k1 * k1 + k2 * k2) + B * s.s_sigma * x) * (-1.0 + x * x) /
         (4.0 * k1 * k2 * x * x);
}

double conical_d0(const SurfaceParams& s, BundleClass b, double beta0) {
  const double k1 = b.k1, k2 = b.k2, x = s.x, x3 = x * x * x;
  const double alpha = conical_alpha(s, b, beta0);
  const double a = -k1 * k1 + k2 * k2 + 1.0;
  const double r = std::sqrt(a * a + 4.0 * k1 * k1);
  const double quartic = std::sqrt(k1 * k1 * k1 * k1 - 2.0 * k1 * k1 * (k2 * k2 - 1.0) +
                                   (k2 * k2 + 1.0) * (k2 * k2 + 1.0));
  const double first = 4.0 * alpha * k2 * k2 *
                       (x3 * (k1 - k2) * (k1 - k2) + (k1 + k2) * (k1 + k2) + x3 + 1.0) /
                       (3.0 * x3 * r);
  const double second = (x + 1.0) * (x + 1.0) * quartic *
                        (x * (-6.0 * beta0 + s.s_sigma * (2.0 * x - 1.0) + 2.0) + 2.0) /
                        (3.0 * x3 * r);
  return first - second;
}

double second_derivative_gap(const SurfaceParams& s, BundleClass b, double beta0) {
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double A = 1.0 + (k1 + k2) * (k1 + k2);
  const double B = 1.0 + (k1 - k2) * (k1 - k2);
  const double num = (3.0 * (1.0 + x) * beta0 - 3.0) * A * A -
                     x * x * B * B * (s.s_sigma * x * x + x);
  const double den = A * A * x - B * B * x * x * x;
  return 4.0 * num / den;
}

}  // namespace closed_form

}  // namespace dhym
