#pragma once

#include <cstddef>
#include <vector>

#include "dhym/params.hpp"

namespace dhym {

enum class Regularity { Smooth, Holder12 };
const char* to_string(Regularity r) noexcept;

enum class Branch { Minus, Plus };

// Explicit solution H_-(t) = t cot(theta) - sqrt((cot^2 + 1)(t^2 + C')) on
// [1/x - 1, 1/x + 1]. `phase` and `cot_theta` refer to the class as supplied;
// for a conjugated input the solution is the negative of the canonical one.
struct DhymSolution {
  double cot_theta = 0.0;
  double Cprime = 0.0;
  double t_minus = 0.0;
  double t_plus = 0.0;
  Regularity regularity = Regularity::Smooth;
  bool conjugated = false;
  Phase phase;
};

struct IntegrationConstants {
  double C = 0.0;
  double Cprime = 0.0;
};

IntegrationConstants integration_constants(const SurfaceParams& s, BundleClass b);

// Throws NoSolution (value = margin) when unstable.
DhymSolution solve_dhym(const SurfaceParams& s, BundleClass b,
                        double tol = kDefaultStabilityTol);

double eval_H(const DhymSolution& sol, double t, Branch branch = Branch::Minus);
double eval_H_prime(const DhymSolution& sol, double t, Branch branch = Branch::Minus);

struct BoundaryTargets {
  double at_t_minus = 0.0;
  double at_t_plus = 0.0;
};

BoundaryTargets boundary_targets(const SurfaceParams& s, BundleClass b);

// H'(H sin - t cos) - (t sin + H cos), with H' from the closed form.
double ode_residual_H(const DhymSolution& sol, double t, Branch branch = Branch::Minus);

// The ODE right-hand side (t sin + H cos)/(H sin - t cos); used by the RK4 oracle.
double dhym_rhs(const Phase& phase, double t, double H);

// nu(t) = k1 t + (k2/t)(1 - x^2)/x^2 - H(t).
double eval_nu(const DhymSolution& sol, const SurfaceParams& s, BundleClass b, double t);

// Uniform grid of n >= 2 points including both ends.
std::vector<double> uniform_grid(double a, double b, std::size_t n);

}  // namespace dhym
