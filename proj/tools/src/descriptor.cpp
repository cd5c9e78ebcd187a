#include "dhym_cli/descriptor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "dhym/error.hpp"
#include "dhym/limits.hpp"

namespace dhym::cli {

namespace {

constexpr double kDhymTol = 1e-9;
constexpr double kImTol = 1e-10;
constexpr double kScalarTol = 1e-8;
constexpr double kBoundaryTol = 1e-9;

double parse_real(std::string_view v, std::string_view key) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw Error(ErrorKind::Validation, "bad real for '" + std::string(key) + "': " + std::string(v));
  return out;
}

int parse_int(std::string_view v, std::string_view key) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw Error(ErrorKind::Validation, "bad integer for '" + std::string(key) + "': " + std::string(v));
  return out;
}

bool parse_bool(std::string_view v, std::string_view key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorKind::Validation, "bad boolean for '" + std::string(key) + "': " + std::string(v));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

StabilityClass parse_stability(std::string_view v) {
  for (auto c : {StabilityClass::Stable, StabilityClass::Semistable, StabilityClass::Unstable})
    if (v == to_string(c)) return c;
  throw Error(ErrorKind::Validation, "bad stability class: " + std::string(v));
}

Regularity parse_regularity(std::string_view v) {
  for (auto r : {Regularity::Smooth, Regularity::Holder12})
    if (v == to_string(r)) return r;
  throw Error(ErrorKind::Validation, "bad regularity: " + std::string(v));
}

PositivityMethod parse_method(std::string_view v) {
  for (auto m : {PositivityMethod::ConvexityCertified, PositivityMethod::GridVerified,
                 PositivityMethod::Failed})
    if (v == to_string(m)) return m;
  throw Error(ErrorKind::Validation, "bad positivity method: " + std::string(v));
}

using D = SolutionDescriptor;

struct Field {
  const char* key;
  std::function<std::string(const D&)> get;
  std::function<void(D&, std::string_view)> set;
};

Field real(const char* key, double D::*m) {
  return {key, [m](const D& d) { return format_real(d.*m); },
          [m, key](D& d, std::string_view v) { d.*m = parse_real(v, key); }};
}

template <class Get, class Set>
Field custom(const char* key, Get g, Set s) {
  return {key, g, s};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      custom("k", [](const D& d) { return std::to_string(d.request.k); },
             [](D& d, std::string_view v) { d.request.k = parse_int(v, "k"); }),
      custom("h", [](const D& d) { return std::to_string(d.request.h); },
             [](D& d, std::string_view v) { d.request.h = parse_int(v, "h"); }),
      custom("kprime", [](const D& d) { return format_real(d.request.kprime); },
             [](D& d, std::string_view v) { d.request.kprime = parse_real(v, "kprime"); }),
      custom("k1", [](const D& d) { return format_real(d.request.k1); },
             [](D& d, std::string_view v) { d.request.k1 = parse_real(v, "k1"); }),
      custom("k2", [](const D& d) { return format_real(d.request.k2); },
             [](D& d, std::string_view v) { d.request.k2 = parse_real(v, "k2"); }),
      custom("complexified", [](const D& d) { return std::string(d.request.complexified ? "true" : "false"); },
             [](D& d, std::string_view v) { d.request.complexified = parse_bool(v, "complexified"); }),
      custom("kpp", [](const D& d) { return format_real(d.request.kpp); },
             [](D& d, std::string_view v) { d.request.kpp = parse_real(v, "kpp"); }),
      custom("smooth", [](const D& d) { return std::string(d.request.beta0 ? "false" : "true"); },
             [](D& d, std::string_view v) {
               if (parse_bool(v, "smooth")) d.request.beta0.reset();
               else d.request.beta0 = d.beta0;
             }),
      custom("beta0", [](const D& d) { return format_real(d.beta0); },
             [](D& d, std::string_view v) {
               d.beta0 = parse_real(v, "beta0");
               if (d.request.beta0) d.request.beta0 = d.beta0;
             }),
      custom("alpha_prime", [](const D& d) { return format_real(d.request.alpha_prime); },
             [](D& d, std::string_view v) { d.request.alpha_prime = parse_real(v, "alpha_prime"); }),
      custom("tol", [](const D& d) { return format_real(d.request.tol); },
             [](D& d, std::string_view v) { d.request.tol = parse_real(v, "tol"); }),
      custom("allow_semistable", [](const D& d) { return std::string(d.request.allow_semistable ? "true" : "false"); },
             [](D& d, std::string_view v) { d.request.allow_semistable = parse_bool(v, "allow_semistable"); }),
      real("x", &D::x),
      real("s_sigma", &D::s_sigma),
      real("cos_theta", &D::cos_theta),
      real("sin_theta", &D::sin_theta),
      real("r_hat", &D::r_hat),
      real("s_hat", &D::s_hat),
      real("margin", &D::margin),
      custom("stability", [](const D& d) { return std::string(to_string(d.stability)); },
             [](D& d, std::string_view v) { d.stability = parse_stability(v); }),
      custom("regularity", [](const D& d) { return std::string(to_string(d.regularity)); },
             [](D& d, std::string_view v) { d.regularity = parse_regularity(v); }),
      custom("conjugated", [](const D& d) { return std::string(d.conjugated ? "true" : "false"); },
             [](D& d, std::string_view v) { d.conjugated = parse_bool(v, "conjugated"); }),
      real("C", &D::C),
      real("Cprime", &D::Cprime),
      real("alpha", &D::alpha),
      real("d0", &D::d0),
      real("d1", &D::d1),
      real("c2", &D::c2),
      real("c3", &D::c3),
      real("cR", &D::cR),
      real("beta_inf", &D::beta_inf),
      custom("positivity_method", [](const D& d) { return std::string(to_string(d.positivity.method)); },
             [](D& d, std::string_view v) { d.positivity.method = parse_method(v); }),
      custom("positivity_min", [](const D& d) { return format_real(d.positivity.min_value); },
             [](D& d, std::string_view v) { d.positivity.min_value = parse_real(v, "positivity_min"); }),
      custom("positivity_argmin", [](const D& d) { return format_real(d.positivity.argmin); },
             [](D& d, std::string_view v) { d.positivity.argmin = parse_real(v, "positivity_argmin"); }),
      custom("max_dhym_residual", [](const D& d) { return format_real(d.residuals.max_dhym_residual); },
             [](D& d, std::string_view v) { d.residuals.max_dhym_residual = parse_real(v, "max_dhym_residual"); }),
      custom("max_im_part", [](const D& d) { return format_real(d.residuals.max_im_part); },
             [](D& d, std::string_view v) { d.residuals.max_im_part = parse_real(v, "max_im_part"); }),
      custom("max_scalar_residual", [](const D& d) { return format_real(d.residuals.max_scalar_residual); },
             [](D& d, std::string_view v) { d.residuals.max_scalar_residual = parse_real(v, "max_scalar_residual"); }),
      custom("boundary_H_error", [](const D& d) { return format_real(d.residuals.boundary_H_error); },
             [](D& d, std::string_view v) { d.residuals.boundary_H_error = parse_real(v, "boundary_H_error"); }),
      custom("boundary_psi_error", [](const D& d) { return format_real(d.residuals.boundary_psi_error); },
             [](D& d, std::string_view v) { d.residuals.boundary_psi_error = parse_real(v, "boundary_psi_error"); }),
      custom("boundary_slope_error", [](const D& d) { return format_real(d.residuals.boundary_slope_error); },
             [](D& d, std::string_view v) { d.residuals.boundary_slope_error = parse_real(v, "boundary_slope_error"); }),
      custom("residuals_passed", [](const D& d) { return std::string(d.residuals.passed ? "true" : "false"); },
             [](D& d, std::string_view v) { d.residuals.passed = parse_bool(v, "residuals_passed"); }),
  };
  return f;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Solved solve(const SolveRequest& req) {
  Solved out;
  if (req.complexified) {
    const ComplexifiedClass cc = from_complexified(req.k, req.h, req.kprime, req.kpp);
    out.surface = cc.surface;
    out.bundle = cc.bundle;
  } else {
    out.surface = make_surface(req.k, req.h, req.kprime);
    out.bundle = {req.k1, req.k2};
  }
  if (!(req.alpha_prime > 0.0) || !std::isfinite(req.alpha_prime))
    throw Error(ErrorKind::Validation, "alpha' must be positive", req.alpha_prime);
  if (req.alpha_prime != 1.0) out.bundle = scale_class(out.bundle, req.alpha_prime);
  canonicalize(out.bundle);
  out.margin = stability_margin(out.surface, out.bundle);
  out.stability = classify(out.margin, req.tol);
  out.dhym = solve_dhym(out.surface, out.bundle, req.tol);
  out.profile = req.beta0 ? conical_coefficients(out.surface, out.bundle, *req.beta0, req.tol)
                          : smooth_coefficients(out.surface, out.bundle, req.tol);
  return out;
}

ResidualSummary compute_residuals(const Solved& sol, std::size_t grid) {
  const DhymSolution& dh = sol.dhym;
  const ProfilePoly& p = sol.profile;
  const SurfaceParams& s = sol.surface;
  ResidualSummary r;
  for (double t : uniform_grid(dh.t_minus, dh.t_plus, grid)) {
    if (t * t + dh.Cprime <= 0.0) continue;  // semistable endpoint: C^{1/2} only
    r.max_dhym_residual = std::max(r.max_dhym_residual, std::abs(ode_residual_H(dh, t)));
    r.max_im_part = std::max(r.max_im_part, std::abs(phase_and_radius(dh, t).im_part));
    r.max_scalar_residual =
        std::max(r.max_scalar_residual, std::abs(scalar_residual(p, s, sol.bundle, t)));
  }
  const BoundaryTargets bt = boundary_targets(s, sol.bundle);
  r.boundary_H_error = std::max(std::abs(eval_H(dh, dh.t_minus) - bt.at_t_minus),
                                std::abs(eval_H(dh, dh.t_plus) - bt.at_t_plus));
  r.boundary_psi_error =
      std::max(std::abs(eval_psi(p, p.t_minus)), std::abs(eval_psi(p, p.t_plus)));
  const double slope_plus = -2.0 * p.beta0 * (1.0 / s.x + 1.0);
  const double slope_minus = 2.0 * p.beta_inf * (1.0 / s.x - 1.0);
  r.boundary_slope_error = std::max(std::abs(eval_psi_deriv(p, p.t_plus, 1) - slope_plus),
                                    std::abs(eval_psi_deriv(p, p.t_minus, 1) - slope_minus));
  const double h_scale = std::max({1.0, std::abs(bt.at_t_minus), std::abs(bt.at_t_plus)});
  const double psi_scale = std::max(1.0, std::abs(p.d0));
  const double slope_scale = std::max({1.0, std::abs(slope_plus), std::abs(slope_minus)});
  r.passed = r.max_dhym_residual <= kDhymTol && r.max_im_part <= kImTol &&
             r.max_scalar_residual <= kScalarTol &&
             r.boundary_H_error <= kBoundaryTol * h_scale &&
             r.boundary_psi_error <= kBoundaryTol * psi_scale &&
             r.boundary_slope_error <= kBoundaryTol * slope_scale;
  return r;
}

SolutionDescriptor describe(const SolveRequest& req, const Solved& sol, std::size_t grid) {
  SolutionDescriptor d;
  d.request = req;
  d.x = sol.surface.x;
  d.s_sigma = sol.surface.s_sigma;
  d.cos_theta = sol.dhym.phase.cos_theta;
  d.sin_theta = sol.dhym.phase.sin_theta;
  d.r_hat = sol.dhym.phase.r_hat;
  d.s_hat = sol.dhym.phase.s_hat;
  d.margin = sol.margin;
  d.stability = sol.stability;
  d.regularity = sol.dhym.regularity;
  d.conjugated = sol.dhym.conjugated;
  const IntegrationConstants ic = integration_constants(sol.surface, sol.bundle);
  d.C = ic.C;
  d.Cprime = sol.dhym.Cprime;
  const ProfilePoly& p = sol.profile;
  d.alpha = p.alpha;
  d.d0 = p.d0;
  d.d1 = p.d1;
  d.c2 = p.c2;
  d.c3 = p.c3;
  d.cR = p.cR;
  d.beta0 = p.beta0;
  d.beta_inf = p.beta_inf;
  d.positivity = positivity_certificate(p);
  d.residuals = compute_residuals(sol, grid);
  return d;
}

std::string format_descriptor(const SolutionDescriptor& d) {
  std::ostringstream os;
  os << "# dhym solution descriptor v1\n"
        "# classes in units of [./2pi] on the basis ([E0], [C]); reduced variable t = 1/x - tau on [1/x - 1, 1/x + 1]\n"
        "# psi(t) = d0 + d1 t + c2 t^2 + c3 t^3 + cR (t^2 + C')^(3/2), phi = psi / (2t); reals at 17 significant digits\n";
  for (const Field& f : fields()) os << f.key << " = " << f.get(d) << '\n';
  return os.str();
}

SolutionDescriptor parse_descriptor(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::Validation, "descriptor line without '=': " + std::string(line));
    kv[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
  }
  SolutionDescriptor d;
  // beta0 before smooth so the optional picks up the parsed value.
  std::vector<const Field*> order;
  for (const Field& f : fields()) order.push_back(&f);
  std::stable_partition(order.begin(), order.end(),
                        [](const Field* f) { return std::string_view(f->key) == "beta0"; });
  for (const Field* f : order) {
    const auto it = kv.find(f->key);
    if (it == kv.end()) throw Error(ErrorKind::Validation, std::string("descriptor is missing '") + f->key + "'");
    f->set(d, it->second);
    kv.erase(it);
  }
  if (!kv.empty()) throw Error(ErrorKind::Validation, "unknown descriptor key '" + kv.begin()->first + "'");
  return d;
}

}  // namespace dhym::cli
