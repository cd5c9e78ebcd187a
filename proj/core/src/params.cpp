#include "dhym/params.hpp"

#include <cmath>
#include <string>

#include "dhym/error.hpp"

namespace dhym {

SurfaceParams make_surface(int k, int h, double kprime) {
  if (k < 1) throw Error(ErrorKind::Validation, "k must be a positive integer", k);
  if (h < 0) throw Error(ErrorKind::Validation, "h must be non-negative", h);
  if (!(kprime > 0.0) || !std::isfinite(kprime))
    throw Error(ErrorKind::Validation, "kprime must be a positive finite real", kprime);
  SurfaceParams s;
  s.k = k;
  s.h = h;
  s.kprime = kprime;
  s.x = k / (k + kprime);
  s.s_sigma = 2.0 * (1 - h) / k;
  return s;
}

CanonicalBundle canonicalize(BundleClass b) {
  if (!std::isfinite(b.k1) || !std::isfinite(b.k2))
    throw Error(ErrorKind::Validation, "bundle class must be finite");
  if (b.k1 == 0.0) throw Error(ErrorKind::DegenerateBundle, "k1 = 0 (trivial phase)");
  if (b.k2 == 0.0) throw Error(ErrorKind::DegenerateBundle, "k2 = 0 (F is a multiple of omega)");
  if (b.k1 > 0.0) return {{-b.k1, -b.k2}, true};
  return {b, false};
}

Phase phase_constant(BundleClass b) {
  const double re = 1.0 - b.k1 * b.k1 + b.k2 * b.k2;
  const double im = -2.0 * b.k1;
  const double r = std::hypot(re, im);
  if (r == 0.0) throw Error(ErrorKind::DegeneratePhase, "1 - k1^2 + k2^2 - 2i k1 vanishes");
  Phase p;
  p.cos_theta = re / r;
  p.sin_theta = im / r;
  p.r_hat = r;
  return p;
}

Phase phase_constant(BundleClass b, const SurfaceParams& s) {
  Phase p = phase_constant(b);
  p.s_hat = 2.0 * s.x * s.s_sigma + 2.0;
  return p;
}

double stability_margin(const SurfaceParams& s, BundleClass b) {
  const double sum = b.k1 + b.k2;
  const double diff = b.k1 - b.k2;
  return (1.0 + sum * sum) - s.x * (1.0 + diff * diff);
}

StabilityClass classify(double margin, double tol) {
  if (margin > tol) return StabilityClass::Stable;
  if (std::abs(margin) <= tol) return StabilityClass::Semistable;
  return StabilityClass::Unstable;
}

const char* to_string(StabilityClass c) noexcept {
  switch (c) {
    case StabilityClass::Stable: return "Stable";
    case StabilityClass::Semistable: return "Semistable";
    case StabilityClass::Unstable: return "Unstable";
  }
  return "Unknown";
}

CohomologyClasses cohomology_classes(const SurfaceParams& s, BundleClass b) {
  CohomologyClasses c;
  c.omega = {2.0, s.kprime};
  c.F = {2.0 * (b.k1 - b.k2), 2.0 * s.k * b.k2 + s.kprime * (b.k1 + b.k2)};
  return c;
}

double intersection_pairing(CohClass u, CohClass v, int k) {
  return u.a * v.a * k + u.a * v.b + u.b * v.a;
}

bool is_integral(CohClass c, double tol) {
  return std::abs(c.a - std::round(c.a)) <= tol && std::abs(c.b - std::round(c.b)) <= tol;
}

JacobYauClass jy_class(const SurfaceParams& s, BundleClass b) {
  if (b.k1 == 0.0) throw Error(ErrorKind::DegeneratePhase, "sin(theta) = 0 when k1 = 0");
  if (b.k1 > 0.0) b = {-b.k1, -b.k2};
  const Phase ph = phase_constant(b);
  const double cot = ph.cot();
  const CohomologyClasses c = cohomology_classes(s, b);
  JacobYauClass out;
  out.omega_class = {cot * c.omega.a - c.F.a, cot * c.omega.b - c.F.b};
  // A coordinate that cancels to rounding level counts as zero (boundary).
  const double tol_a = 1e-12 * (std::abs(cot * c.omega.a) + std::abs(c.F.a) + 1.0);
  const double tol_b = 1e-12 * (std::abs(cot * c.omega.b) + std::abs(c.F.b) + 1.0);
  out.is_positive = out.omega_class.a > tol_a && out.omega_class.b > tol_b;
  return out;
}

ComplexifiedClass from_complexified(int k, int h, double kprime, double kpp) {
  if (kpp == 0.0 || !std::isfinite(kpp))
    throw Error(ErrorKind::Validation,
                "k'' must be nonzero: a vanishing B-field would need a cscK metric, which does not exist");
  ComplexifiedClass c;
  c.surface = make_surface(k, h, kprime);
  const double ki = kpp / (2.0 * (k + kprime));
  c.bundle = {ki, ki};
  c.canonical = canonicalize(c.bundle);
  return c;
}

double bfield_alpha(int k, int h, double kprime, double kpp, double beta0) {
  if (kpp == 0.0) throw Error(ErrorKind::Validation, "k'' must be nonzero");
  if (!(beta0 > 0.0 && beta0 <= 1.0))
    throw Error(ErrorKind::Validation, "beta0 must lie in (0, 1]", beta0);
  const SurfaceParams s = make_surface(k, h, kprime);
  const double kk = static_cast<double>(k);
  const double bracket = kk * kk * (-6.0 * beta0 + s.s_sigma + 4.0) +
                         (7.0 - 9.0 * beta0) * kk * kprime -
                         3.0 * (beta0 - 1.0) * kprime * kprime;
  return 2.0 * std::hypot(kk + kprime, kpp) * bracket / (kk * kpp * kpp);
}

}  // namespace dhym
