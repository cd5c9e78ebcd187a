#include "dhym/tke.hpp"

#include <algorithm>
#include <cmath>

#include "dhym/coupled.hpp"
#include "dhym/error.hpp"

namespace dhym {

namespace {

double gamma_of(int k, double kprime, int h, double beta) {
  return 4.0 - 6.0 * beta + 3.0 * (kprime / k) * (1.0 - beta) + 2.0 * (1 - h) / (k + kprime);
}

double numerator_of(int k, double kprime, int h, double beta) {
  return 2.0 * (2.0 * (1 - h) / (k + kprime) + 2.0 * (beta - 1.0) * k / kprime - 1.0);
}

}  // namespace

CohClass ricci_class(const SurfaceParams& s, double beta0, double beta_inf) {
  return {beta0 + beta_inf, 2.0 * (1 - s.h) - s.k * beta_inf};
}

double gamma_value(const SurfaceParams& s, double beta0) {
  const double x = s.x;
  return (3.0 + x + s.s_sigma * x * x - 3.0 * (1.0 + x) * beta0) / x;
}

double F_value(BundleClass b) {
  if (b.k1 == 0.0 || b.k2 == 0.0) throw Error(ErrorKind::DegenerateBundle, "F needs k1 k2 != 0");
  return (1.0 + (b.k1 + b.k2) * (b.k1 + b.k2)) / (2.0 * b.k1 * b.k2);
}

double condition_residual(const SurfaceParams& s, BundleClass b, double beta0) {
  const double x = s.x, sg = s.s_sigma, k1 = b.k1, k2 = b.k2;
  const double lhs = (1.0 + k1 * k1 + k2 * k2) * (x - 1.0) *
                     (sg * x * x - 3.0 * beta0 * (x + 1.0) + x + 3.0);
  const double rhs = 2.0 * k1 * k2 *
                     (-3.0 * beta0 + sg * x * x * x - x * x * (beta0 + sg - 1.0) + 3.0);
  return lhs - rhs;
}

double cohomology_condition_residual(const SurfaceParams& s, BundleClass b, double beta0) {
  const double x = s.x;
  const double rhs = 2.0 * (s.s_sigma * x + 2.0 * x / (1.0 - x) * (beta0 - 1.0) - 1.0);
  return F_value(b) * gamma_value(s, beta0) - rhs;
}

TwistedKeSystem system_residuals(const SurfaceParams& s, BundleClass b, double beta0) {
  const double k = s.k, kp = s.kprime, g = 1.0 - s.h;
  const double beta_inf = beta_infinity(s.x, beta0);
  const double lhs = F_value(b) * gamma_value(s, beta0);
  TwistedKeSystem r;
  r.first = lhs - (2.0 + 4.0 * g / (k + kp) - 2.0 * (beta0 + beta_inf));
  r.second = lhs * (kp / 2.0 + k) - (2.0 * g * (2.0 * k + kp) / (k + kp) - 2.0 * k * beta_inf - kp);
  r.compatibility = 2.0 * (kp + k) - (2.0 * k + kp) * beta0 - kp * beta_inf;
  return r;
}

double H_beta(int k, double kprime, int h, double beta) {
  const double g = gamma_of(k, kprime, h, beta);
  const double scale = 4.0 + 6.0 * std::abs(beta) + 3.0 * (kprime / k) * (1.0 + std::abs(beta)) +
                       2.0 * std::abs(1.0 - h) / (k + kprime);
  if (std::abs(g) <= 1e-12 * scale) throw Error(ErrorKind::Pole, "H(beta) has a pole at beta_bar", beta);
  return numerator_of(k, kprime, h, beta) / g;
}

double H_beta_derivative(int k, double kprime, int h, double beta) {
  const double g = gamma_of(k, kprime, h, beta);
  if (g == 0.0) throw Error(ErrorKind::Pole, "H(beta) has a pole at beta_bar", beta);
  const double dn = 4.0 * k / kprime;
  const double dg = -6.0 - 3.0 * kprime / k;
  return (dn * g - numerator_of(k, kprime, h, beta) * dg) / (g * g);
}

double beta_asymptote(int k, double kprime, int h) {
  const double kk = k;
  const double num = (4.0 * kk + 3.0 * kprime) * (kk + kprime) + 2.0 * (1 - h) * kk;
  return num / (3.0 * (kk + kprime) * (kprime + 2.0 * kk));
}

TkeAnalysis analyze_tke(const SurfaceParams& s, BundleClass b, double beta0) {
  TkeAnalysis a;
  a.gamma = gamma_value(s, beta0);
  a.F_value = F_value(b);
  a.H_at_1 = H_beta(s.k, s.kprime, s.h, 1.0);
  a.beta_bar = beta_asymptote(s.k, s.kprime, s.h);
  a.condition_residual = condition_residual(s, b, beta0);
  return a;
}

Beta0Solution solve_beta0(const SurfaceParams& s, BundleClass b) {
  const BundleClass c = canonicalize(b).cls;
  Beta0Solution out;
  const double F = F_value(c);
  const double bar = beta_asymptote(s.k, s.kprime, s.h);
  if (!(bar > 0.0 && bar < 1.0)) {
    out.reason = "asymptote beta_bar = " + std::to_string(bar) + " is outside (0, 1)";
    out.attained_lo = out.attained_hi = std::nan("");
    return out;
  }
  constexpr double eps = 1e-9;
  double lo = bar + eps, hi = 1.0 - eps;
  auto g = [&](double beta) { return H_beta(s.k, s.kprime, s.h, beta) - F; };
  const double h_lo = g(lo) + F, h_hi = g(hi) + F;
  out.attained_lo = std::min(h_lo, h_hi);
  out.attained_hi = std::max(h_lo, h_hi);
  if (!(F > 2.0)) {
    out.reason = "F(k1, k2) = " + std::to_string(F) + " is not greater than 2";
    return out;
  }
  if (!(F > out.attained_lo && F < out.attained_hi)) {
    out.reason = "F(k1, k2) = " + std::to_string(F) + " lies outside the attained range";
    return out;
  }
  double g_lo = g(lo);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = gm;
    } else {
      hi = mid;
    }
  }
  const double beta0 = 0.5 * (lo + hi);
  const double res = condition_residual(s, c, beta0);
  if (std::abs(res) >= 1e-9)
    throw Error(ErrorKind::Consistency, "condition residual at solved beta0 is not small", res);
  const ProfilePoly p = conical_coefficients(s, c, beta0);
  if (std::abs(p.d1) >= 1e-8)
    throw Error(ErrorKind::Consistency, "linear coefficient d1 does not vanish at solved beta0", p.d1);
  out.beta0 = beta0;
  return out;
}

}  // namespace dhym
