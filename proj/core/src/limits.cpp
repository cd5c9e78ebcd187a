#include "dhym/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "dhym/error.hpp"
#include "dhym/oracle.hpp"

namespace dhym {

namespace {

double richardson(double v_far, double eps_far, double v_near, double eps_near, double order) {
  const double a = std::pow(eps_far, order), b = std::pow(eps_near, order);
  return (v_near * a - v_far * b) / (a - b);
}

double scalar_curvature(const ProfilePoly& p, const SurfaceParams& s, double t) {
  return (2.0 * s.s_sigma - eval_psi_deriv(p, t, 2)) / t;
}

std::vector<double> interior_points(double a, double b, std::size_t n) {
  std::vector<double> g = uniform_grid(a, b, n + 2);
  return {g.begin() + 1, g.end() - 1};
}

struct Limit {
  std::function<double(double)> H;
  std::function<double(double)> H_prime;
  bool large;  // alpha' -> 0
};

// Shared by both regimes; `near` is the sample closest to the limit.
ConvergenceReport check(const ScaledFamily& fam, const Limit& lim, std::size_t grid,
                        double alpha_limit, double constant_expected, double gamma_expected) {
  if (fam.samples.size() < 2)
    throw Error(ErrorKind::Validation, "a convergence study needs at least two alpha' samples");
  const SurfaceParams& s = fam.surface;
  const auto& first = fam.samples.front().dhym;
  const std::vector<double> ts = uniform_grid(first.t_minus, first.t_plus, grid);

  ConvergenceReport rep;
  rep.alpha_limit = alpha_limit;
  rep.limit_constant_expected = constant_expected;
  rep.fit_gamma_expected = gamma_expected;

  std::vector<double> log_eps, log_err;
  for (const ScaledSample& smp : fam.samples) {
    const double ap = smp.alpha_prime;
    ConvergencePoint pt;
    pt.alpha_prime = ap;
    for (double t : ts) {
      pt.sup_error = std::max(pt.sup_error, std::abs(eval_H(smp.dhym, t) / ap - lim.H(t)));
      if (lim.large)
        pt.nu_sup = std::max(pt.nu_sup, std::abs(eval_nu(smp.dhym, s, smp.bundle, t)) / ap);
    }
    pt.alpha_scaled = ap * ap * smp.profile.alpha;
    rep.points.push_back(pt);
    log_eps.push_back(std::log(lim.large ? ap : 1.0 / ap));
    log_err.push_back(std::log(pt.sup_error));
  }
  rep.fitted_order = oracle::fit_slope(log_eps, log_err);

  const ScaledSample& near = lim.large ? fam.samples.front() : fam.samples.back();
  const ScaledSample& far = lim.large ? fam.samples[1] : fam.samples[fam.samples.size() - 2];
  const double eps_near = lim.large ? near.alpha_prime : 1.0 / near.alpha_prime;
  const double eps_far = lim.large ? far.alpha_prime : 1.0 / far.alpha_prime;
  const double order = std::max(1.0, std::round(rep.fitted_order));

  const ConvergencePoint& near_pt = lim.large ? rep.points.front() : rep.points.back();
  rep.alpha_limit_rel_error = std::abs(near_pt.alpha_scaled - alpha_limit) / std::abs(alpha_limit);

  for (double t : ts)
    rep.profile_cauchy_gap = std::max(
        rep.profile_cauchy_gap, std::abs(eval_psi(near.profile, t) - eval_psi(far.profile, t)));

  // Fiber-average of Lambda F (large) or F.omega / F^2 (small), pointwise in t.
  auto constant_at = [&](const ScaledSample& smp, double t) {
    const double ap = smp.alpha_prime;
    const double l1 = eval_H(smp.dhym, t) / (ap * t);
    const double l2 = eval_H_prime(smp.dhym, t) / ap;
    return lim.large ? l1 + l2 : (l1 + l2) / (2.0 * l1 * l2);
  };
  const std::vector<double> ti = interior_points(first.t_minus, first.t_plus, 11);
  std::vector<double> vals;
  for (double t : ti)
    vals.push_back(richardson(constant_at(far, t), eps_far, constant_at(near, t), eps_near, order));
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  rep.limit_constant = mean;
  for (double v : vals)
    rep.limit_constant_spread =
        std::max(rep.limit_constant_spread, std::abs(v - mean) / std::max(std::abs(mean), 1e-300));

  // Least-squares fit s(omega) = c + gamma lambda1 lambda2 of the limit data.
  const std::vector<double> tf = interior_points(first.t_minus, first.t_plus, 51);
  std::vector<double> P, S;
  for (double t : tf) {
    P.push_back(lim.H(t) * lim.H_prime(t) / t);
    S.push_back(richardson(scalar_curvature(far.profile, s, t), eps_far,
                           scalar_curvature(near.profile, s, t), eps_near, order));
  }
  rep.fit_gamma = oracle::fit_slope(P, S);
  double mp = 0, ms = 0;
  for (std::size_t i = 0; i < P.size(); ++i) {
    mp += P[i];
    ms += S[i];
  }
  mp /= static_cast<double>(P.size());
  ms /= static_cast<double>(P.size());
  rep.fit_c = ms - rep.fit_gamma * mp;
  for (std::size_t i = 0; i < P.size(); ++i)
    rep.fit_residual =
        std::max(rep.fit_residual, std::abs(S[i] - rep.fit_c - rep.fit_gamma * P[i]));
  return rep;
}

}  // namespace

BundleClass scale_class(BundleClass b, double alpha_prime) {
  return {alpha_prime * b.k1, alpha_prime * b.k2};
}

double scaled_margin(const SurfaceParams& s, BundleClass b, double alpha_prime) {
  const double sum = b.k1 + b.k2, diff = b.k1 - b.k2;
  return 1.0 - s.x + alpha_prime * alpha_prime * (sum * sum - s.x * diff * diff);
}

double scaled_Cprime(const SurfaceParams& s, BundleClass b, double alpha_prime) {
  const double a2 = alpha_prime * alpha_prime, x = s.x;
  const double sum = b.k1 + b.k2, diff = b.k1 - b.k2;
  return 4.0 * a2 * b.k1 * b.k2 * (1.0 / (x * x * (1.0 + a2 * diff * diff)) - 1.0 / (1.0 + a2 * sum * sum));
}

ScaledSample scaled_solution(const SurfaceParams& s, BundleClass b, double alpha_prime) {
  if (!(alpha_prime > 0.0) || !std::isfinite(alpha_prime))
    throw Error(ErrorKind::Validation, "alpha' must be positive", alpha_prime);
  const double margin = scaled_margin(s, b, alpha_prime);
  if (classify(margin) == StabilityClass::Unstable)
    throw Error(ErrorKind::NoSolution,
                "scaled class is unstable at alpha' = " + std::to_string(alpha_prime), alpha_prime);
  ScaledSample smp;
  smp.alpha_prime = alpha_prime;
  smp.bundle = scale_class(b, alpha_prime);
  smp.dhym = solve_dhym(s, smp.bundle);
  smp.profile = smooth_coefficients(s, smp.bundle);
  if (smp.dhym.regularity == Regularity::Smooth) {
    const double expected = scaled_Cprime(s, b, alpha_prime);
    if (std::abs(smp.dhym.Cprime - expected) > 1e-12 * std::abs(expected))
      throw Error(ErrorKind::Consistency, "scaled C' disagrees with its closed form",
                  smp.dhym.Cprime - expected);
  }
  return smp;
}

ScaledFamily make_family(const SurfaceParams& s, BundleClass b, std::vector<double> alphas) {
  std::sort(alphas.begin(), alphas.end());
  ScaledFamily fam;
  fam.surface = s;
  fam.base = b;
  for (double ap : alphas) fam.samples.push_back(scaled_solution(s, b, ap));
  return fam;
}

double large_radius_alpha(const SurfaceParams& s, BundleClass b) {
  return (-2.0 + s.s_sigma * s.x) / (2.0 * b.k2 * b.k2);
}

double small_radius_alpha(const SurfaceParams& s, BundleClass b) {
  const double d = b.k1 - b.k2;
  return std::abs(b.k1 * b.k1 - b.k2 * b.k2) * (-2.0 + s.s_sigma * s.x) / (2.0 * d * d * b.k2 * b.k2);
}

double SmallRadiusConstants::K(double t) const {
  return t + branch * std::sqrt(t * t + C_hat);
}

double SmallRadiusConstants::limit_H_prime(double t) const {
  return prefactor * (1.0 + branch * t / std::sqrt(t * t + C_hat));
}

SmallRadiusConstants small_radius_constants(const SurfaceParams& s, BundleClass b) {
  canonicalize(b);
  const double k1 = b.k1, k2 = b.k2, x = s.x;
  const double d2 = k1 * k1 - k2 * k2;
  if (d2 == 0.0)
    throw Error(ErrorKind::DegenerateLimit, "k1^2 = k2^2: the small-radius constant diverges");
  const double sum = k1 + k2, diff = k1 - k2;
  if (!(sum * sum > x * diff * diff))
    throw Error(ErrorKind::NoSolution, "(k1 + k2)^2 > x (k1 - k2)^2 fails",
                sum * sum - x * diff * diff);
  SmallRadiusConstants c;
  c.C_hat = 4.0 * k1 * k2 * (1.0 / (x * x * diff * diff) - 1.0 / (sum * sum));
  c.branch = d2 > 0.0 ? 1 : -1;
  c.prefactor = d2 / (2.0 * k1);
  return c;
}

ConvergenceReport large_radius_check(const ScaledFamily& fam, std::size_t grid) {
  const double k1 = fam.base.k1, k2 = fam.base.k2, x = fam.surface.x;
  const double c = 1.0 / (x * x) - 1.0;
  Limit lim{[=](double t) { return k1 * t + k2 * c / t; },
            [=](double t) { return k1 - k2 * c / (t * t); }, true};
  return check(fam, lim, grid, large_radius_alpha(fam.surface, fam.base), 2.0 * k1,
               -large_radius_alpha(fam.surface, fam.base));
}

ConvergenceReport small_radius_check(const ScaledFamily& fam, std::size_t grid) {
  const SmallRadiusConstants sc = small_radius_constants(fam.surface, fam.base);
  Limit lim{[sc](double t) { return sc.limit_H(t); },
            [sc](double t) { return sc.limit_H_prime(t); }, false};
  const double alpha_lim = small_radius_alpha(fam.surface, fam.base);
  return check(fam, lim, grid, alpha_lim, 1.0 / (2.0 * sc.prefactor), sc.branch * alpha_lim);
}

}  // namespace dhym
