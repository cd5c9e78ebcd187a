#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dhym/coupled.hpp"

// Independent numerics used to cross-check the closed forms.
namespace dhym::oracle {

struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;
};

using Rhs = std::function<double(double t, double y)>;
using Scalar = std::function<double(double)>;

// Classical RK4 with a fixed step; t1 < t0 integrates backwards. The step is
// adjusted down so that a whole number of steps lands exactly on t1.
GridFunction rk4_solve(const Rhs& rhs, double t0, double y0, double t1, double step);

// Adaptive Simpson. Throws NonConvergence (value = estimate) past max_depth.
double quadrature(const Scalar& f, double a, double b, double tol = 1e-10, int max_depth = 40);

// Central-difference estimate of the derivative of the given order (1..4).
double finite_difference(const Scalar& f, double t, int order, double h);

std::array<double, 2> solve_2x2(double a11, double a12, double a21, double a22, double b1,
                                double b2);

// s(tau) = int_{tau0}^{tau} dtau' / phi(tau'), tau = 1/x - t, on a grid that
// clusters geometrically toward tau = -1 and tau = +1 (down to 1e-8 from each
// end). tau0 must lie in [-0.9, 0.9].
GridFunction reconstruct_s_of_tau(const ProfilePoly& p, double tau0 = 0.0,
                                  std::size_t per_decade = 4);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dhym::oracle
