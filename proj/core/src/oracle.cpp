#include "dhym/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "dhym/error.hpp"

namespace dhym::oracle {

GridFunction rk4_solve(const Rhs& rhs, double t0, double y0, double t1, double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::Validation, "step must be positive", step);
  const double span = t1 - t0;
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(std::abs(span) / step - 1e-9)));
  const double h = span / static_cast<double>(n);

  GridFunction out;
  out.nodes.reserve(n + 1);
  out.values.reserve(n + 1);
  out.nodes.push_back(t0);
  out.values.push_back(y0);

  auto eval = [&](double t, double y) {
    const double v = rhs(t, y);
    if (!std::isfinite(v))
      throw Error(ErrorKind::IntegrationFailure, "right-hand side is not finite", t);
    return v;
  };

  double y = y0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t0 + h * static_cast<double>(i);
    const double k1 = eval(t, y);
    const double k2 = eval(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = eval(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = eval(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.nodes.push_back(i + 1 == n ? t1 : t0 + h * static_cast<double>(i + 1));
    out.values.push_back(y);
  }
  if (h < 0.0) {
    std::reverse(out.nodes.begin(), out.nodes.end());
    std::reverse(out.values.begin(), out.values.end());
  }
  return out;
}

namespace {

double simpson(const Scalar& f, double a, double fa, double b, double fb, double m, double fm,
               double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0)
    throw Error(ErrorKind::NonConvergence, "adaptive Simpson exceeded maximum depth",
                left + right + delta / 15.0);
  return simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double quadrature(const Scalar& f, double a, double b, double tol, int max_depth) {
  if (!(a < b)) throw Error(ErrorKind::Validation, "quadrature needs a < b");
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double finite_difference(const Scalar& f, double t, int order, double h) {
  switch (order) {
    case 1: return (f(t + h) - f(t - h)) / (2.0 * h);
    case 2: return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    case 3: return (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(t + 2.0 * h) - 4.0 * f(t + h) + 6.0 * f(t) - 4.0 * f(t - h) + f(t - 2.0 * h)) /
             (h * h * h * h);
    default: throw Error(ErrorKind::Validation, "finite difference order must be 1..4", order);
  }
}

std::array<double, 2> solve_2x2(double a11, double a12, double a21, double a22, double b1,
                                double b2) {
  const double det = a11 * a22 - a12 * a21;
  const double scale = std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
  if (!(std::abs(det) >= 1e-14 * scale * scale))
    throw Error(ErrorKind::SingularSystem, "2x2 system is singular", det);
  return {(b1 * a22 - a12 * b2) / det, (a11 * b2 - b1 * a21) / det};
}

namespace {

// psi at distance d inside an endpoint. Near a smooth endpoint the polynomial
// form cancels to a few digits, so use the Taylor expansion about the root.
double psi_from_end(const ProfilePoly& p, bool at_plus, double d) {
  const double end = at_plus ? p.t_plus : p.t_minus;
  const bool smooth_end = at_plus || p.regularity == Regularity::Smooth;
  if (d < 1e-3 && smooth_end) {
    const double h = at_plus ? -d : d;
    double acc = 0.0, fact = 1.0, pw = 1.0;
    for (int n = 1; n <= 4; ++n) {
      fact *= n;
      pw *= h;
      acc += eval_psi_deriv(p, end, n) * pw / fact;
    }
    return acc;
  }
  return eval_psi(p, at_plus ? end - d : end + d);
}

double checked_inverse_phi(double psi, double t, double where) {
  const double phi = psi / (2.0 * t);
  if (!(phi > 0.0))
    throw Error(ErrorKind::PositivityViolation, "phi <= 0 during reconstruction", where);
  return 1.0 / phi;
}

double rel_quadrature(const Scalar& f, double a, double b, double rel) {
  const double coarse = (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  return quadrature(f, a, b, rel * std::max(1.0, std::abs(coarse)));
}

}  // namespace

GridFunction reconstruct_s_of_tau(const ProfilePoly& p, double tau0, std::size_t per_decade) {
  if (!(tau0 >= -0.9 && tau0 <= 0.9))
    throw Error(ErrorKind::Validation, "tau0 must lie in [-0.9, 0.9]", tau0);
  const double inv_x = 0.5 * (p.t_minus + p.t_plus);
  const double rel = p.regularity == Regularity::Smooth ? 1e-10 : 1e-6;

  // Distances from an end, ascending, exactly representable in d.
  std::vector<double> ds;
  const std::size_t n_end = 7 * std::max<std::size_t>(per_decade, 1);
  for (std::size_t i = 0; i < n_end; ++i)
    ds.push_back(std::pow(10.0, -8.0 + 7.0 * static_cast<double>(i) / static_cast<double>(n_end)));
  ds.push_back(0.1);

  std::vector<double> mid;
  for (int i = -9; i <= 9; ++i) mid.push_back(0.1 * i);
  mid.front() = -0.9;
  mid.back() = 0.9;
  mid.push_back(tau0);
  std::sort(mid.begin(), mid.end());
  mid.erase(std::unique(mid.begin(), mid.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            mid.end());

  // tau = -1 + d sits at t = t_plus - d; tau = 1 - d at t = t_minus + d.
  auto f_left = [&](double d) {
    return checked_inverse_phi(psi_from_end(p, true, d), p.t_plus - d, -1.0 + d);
  };
  auto f_right = [&](double d) {
    return checked_inverse_phi(psi_from_end(p, false, d), p.t_minus + d, 1.0 - d);
  };
  auto f_mid = [&](double tau) {
    const double t = inv_x - tau;
    return checked_inverse_phi(eval_psi(p, t), t, tau);
  };

  GridFunction out;
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) out.nodes.push_back(-1.0 + ds[i]);
  out.nodes.insert(out.nodes.end(), mid.begin(), mid.end());
  for (std::size_t i = ds.size() - 1; i-- > 0;) out.nodes.push_back(1.0 - ds[i]);
  out.values.assign(out.nodes.size(), 0.0);

  const std::size_t nl = ds.size() - 1;  // left nodes before the middle block
  const std::size_t i0 = nl + static_cast<std::size_t>(
      std::find_if(mid.begin(), mid.end(), [&](double v) { return std::abs(v - tau0) < 1e-12; }) -
      mid.begin());
  const std::size_t i_mid_end = nl + mid.size() - 1;

  for (std::size_t i = i0 + 1; i <= i_mid_end; ++i)
    out.values[i] = out.values[i - 1] + rel_quadrature(f_mid, out.nodes[i - 1], out.nodes[i], rel);
  for (std::size_t i = i0; i-- > nl;)
    out.values[i] = out.values[i + 1] - rel_quadrature(f_mid, out.nodes[i], out.nodes[i + 1], rel);
  // Left block: node j has d = ds[j]; node nl (tau = -0.9) has d = 0.1.
  for (std::size_t j = nl; j-- > 0;)
    out.values[j] = out.values[j + 1] - rel_quadrature(f_left, ds[j], ds[j + 1], rel);
  // Right block: node i_mid_end + m has d = ds[nl - m].
  for (std::size_t m = 1; m <= nl; ++m)
    out.values[i_mid_end + m] =
        out.values[i_mid_end + m - 1] + rel_quadrature(f_right, ds[nl - m], ds[nl - m + 1], rel);
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::Validation, "slope fit needs two or more paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxy / sxx;
}

}  // namespace dhym::oracle
