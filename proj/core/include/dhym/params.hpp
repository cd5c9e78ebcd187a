#pragma once

#include <limits>

namespace dhym {

// Base data of X = P(L + O) over a genus-h curve, with [omega] = 2pi[2 E0 + k' C].
struct SurfaceParams {
  int k = 1;
  int h = 0;
  double kprime = 1.0;
  double x = 0.5;        // k / (k + k')
  double s_sigma = 2.0;  // 2(1 - h) / k
};

SurfaceParams make_surface(int k, int h, double kprime);

struct BundleClass {
  double k1 = 0.0;
  double k2 = 0.0;
};

// Representative with k1 < 0. `conjugated` records that the input had k1 > 0
// and was mapped by (k1, k2) -> (-k1, -k2), which sends F -> -F, theta -> -theta.
struct CanonicalBundle {
  BundleClass cls;
  bool conjugated = false;
};

// Throws DegenerateBundle when k1 == 0 or k2 == 0.
CanonicalBundle canonicalize(BundleClass b);

struct Phase {
  double cos_theta = 1.0;
  double sin_theta = 0.0;
  double r_hat = 1.0;
  double s_hat = std::numeric_limits<double>::quiet_NaN();

  double cot() const { return cos_theta / sin_theta; }
};

Phase phase_constant(BundleClass b);
Phase phase_constant(BundleClass b, const SurfaceParams& s);

double stability_margin(const SurfaceParams& s, BundleClass b);

enum class StabilityClass { Stable, Semistable, Unstable };

inline constexpr double kDefaultStabilityTol = 1e-12;

StabilityClass classify(double margin, double tol = kDefaultStabilityTol);
const char* to_string(StabilityClass c) noexcept;

// Coefficients of [E0] and [C] in [ . / 2pi].
struct CohClass {
  double a = 0.0;
  double b = 0.0;
};

struct CohomologyClasses {
  CohClass omega;
  CohClass F;
};

CohomologyClasses cohomology_classes(const SurfaceParams& s, BundleClass b);

// E0.E0 = k, C.C = 0, C.E0 = 1.
double intersection_pairing(CohClass u, CohClass v, int k);

// F pairs integrally iff both coordinates are integers. Reported, never enforced.
bool is_integral(CohClass c, double tol = 1e-12);

struct JacobYauClass {
  CohClass omega_class;  // class of cot(theta) omega - F
  bool is_positive = false;
};

// Evaluated on the canonical (k1 < 0) representative.
JacobYauClass jy_class(const SurfaceParams& s, BundleClass b);

struct ComplexifiedClass {
  SurfaceParams surface;
  BundleClass bundle;  // k1 = k2 = k'' / (2(k + k')), before canonicalization
  CanonicalBundle canonical;
};

ComplexifiedClass from_complexified(int k, int h, double kprime, double kpp);

// Coupling constant for the complexified class, in terms of (k, h, k', k'').
double bfield_alpha(int k, int h, double kprime, double kpp, double beta0);

}  // namespace dhym
