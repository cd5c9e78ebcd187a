#include "dhym_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dhym/coupled.hpp"
#include "dhym/error.hpp"
#include "dhym/limits.hpp"
#include "dhym/tke.hpp"
#include "dhym_cli/descriptor.hpp"

namespace dhym::cli {

namespace {

struct Params {
  int k = 1;
  int h = 0;
  double kprime = 0.0;
  std::optional<double> k1, k2;
  bool complexified = false;
  std::optional<double> kpp;
  std::optional<double> beta0;
  double alpha_prime = 1.0;
  double tol = kDefaultStabilityTol;
  bool allow_semistable = false;
  std::string out_path;
  std::size_t samples = 201;
};

void add_surface(CLI::App* sc, Params& p) {
  sc->add_option("--k", p.k, "degree of the line bundle (positive integer)")->capture_default_str();
  sc->add_option("--h", p.h, "genus of the base curve")->capture_default_str();
  sc->add_option("--kprime", p.kprime, "Kahler class parameter k' > 0")->required();
}

void add_bundle(CLI::App* sc, Params& p) {
  add_surface(sc, p);
  sc->add_option("--k1", p.k1, "bundle class parameter k1");
  sc->add_option("--k2", p.k2, "bundle class parameter k2");
  sc->add_flag("--complexified", p.complexified, "use k1 = k2 = k''/(2(k + k'))");
  sc->add_option("--kpp", p.kpp, "B-field parameter k'' (with --complexified)");
  sc->add_option("--tol", p.tol, "semistability band on the margin")->capture_default_str();
}

SolveRequest request_of(const Params& p) {
  SolveRequest r;
  r.k = p.k;
  r.h = p.h;
  r.kprime = p.kprime;
  r.complexified = p.complexified;
  if (p.complexified) {
    if (!p.kpp) throw Error(ErrorKind::Validation, "--complexified needs --kpp");
    r.kpp = *p.kpp;
    const ComplexifiedClass cc = from_complexified(p.k, p.h, p.kprime, *p.kpp);
    r.k1 = cc.bundle.k1;
    r.k2 = cc.bundle.k2;
  } else {
    if (!p.k1 || !p.k2) throw Error(ErrorKind::Validation, "--k1 and --k2 are required");
    r.k1 = *p.k1;
    r.k2 = *p.k2;
  }
  r.beta0 = p.beta0;
  r.alpha_prime = p.alpha_prime;
  r.tol = p.tol;
  r.allow_semistable = p.allow_semistable;
  return r;
}

int emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot open '" << path << "' for writing\n";
    return kUsage;
  }
  f << text;
  return kOk;
}

std::string pair(CohClass c) { return "(" + format_real(c.a) + ", " + format_real(c.b) + ")"; }

int cmd_check(const Params& p, std::ostream& out) {
  const SolveRequest r = request_of(p);
  const SurfaceParams s = make_surface(r.k, r.h, r.kprime);
  const BundleClass b{r.k1, r.k2};
  canonicalize(b);
  const double margin = stability_margin(s, b);
  const StabilityClass cls = classify(margin, r.tol);
  const Phase ph = phase_constant(b, s);
  const CohomologyClasses cc = cohomology_classes(s, b);
  const JacobYauClass jy = jy_class(s, b);
  out << "x = " << format_real(s.x) << '\n'
      << "s_sigma = " << format_real(s.s_sigma) << '\n'
      << "k1 = " << format_real(b.k1) << '\n'
      << "k2 = " << format_real(b.k2) << '\n'
      << "margin = " << format_real(margin) << '\n'
      << "stability = " << to_string(cls) << '\n'
      << "cos_theta = " << format_real(ph.cos_theta) << '\n'
      << "sin_theta = " << format_real(ph.sin_theta) << '\n'
      << "r_hat = " << format_real(ph.r_hat) << '\n'
      << "s_hat = " << format_real(ph.s_hat) << '\n'
      << "omega_class = " << pair(cc.omega) << '\n'
      << "F_class = " << pair(cc.F) << '\n'
      << "F_integral = " << (is_integral(cc.F) ? "true" : "false") << '\n'
      << "jy_class = " << pair(jy.omega_class) << '\n'
      << "jy_positive = " << (jy.is_positive ? "true" : "false") << '\n';
  if (cls == StabilityClass::Semistable) return kSemistable;
  if (cls == StabilityClass::Unstable) return kUnstable;
  return kOk;
}

std::optional<int> refuse_semistable(const Solved& sol, const SolveRequest& r, std::ostream& err) {
  if (sol.stability == StabilityClass::Semistable && !r.allow_semistable) {
    err << "error: class is semistable (margin " << format_real(sol.margin)
        << "); pass --allow-semistable to accept the C^{1,1/2} solution\n";
    return kSemistable;
  }
  return std::nullopt;
}

int cmd_solve(const Params& p, std::ostream& out, std::ostream& err) {
  const SolveRequest r = request_of(p);
  const Solved sol = solve(r);
  if (auto code = refuse_semistable(sol, r, err)) return *code;
  const SolutionDescriptor d = describe(r, sol);
  const int rc = emit(format_descriptor(d), p.out_path, out, err);
  if (rc != kOk) return rc;
  if (!d.residuals.passed || d.positivity.method == PositivityMethod::Failed) {
    err << "error: residual suite failed\n";
    return kResidualFailure;
  }
  return kOk;
}

int cmd_profile(const Params& p, std::ostream& out, std::ostream& err) {
  const SolveRequest r = request_of(p);
  const Solved sol = solve(r);
  if (auto code = refuse_semistable(sol, r, err)) return *code;
  if (p.samples < 2) throw Error(ErrorKind::Validation, "--samples must be at least 2");
  std::ostringstream os;
  os << "# momentum profile; k=" << r.k << " h=" << r.h << " kprime=" << format_real(r.kprime)
     << " k1=" << format_real(sol.bundle.k1) << " k2=" << format_real(sol.bundle.k2)
     << " beta0=" << format_real(sol.profile.beta0)
     << "; t = 1/x - tau, psi = 2 t phi; empty cells: derivative undefined at a C^{1/2} endpoint\n";
  os << "t,phi,psi,H,im_residual,scalar_residual\n";
  double worst_im = 0.0, worst_scalar = 0.0;
  for (double t : uniform_grid(sol.dhym.t_minus, sol.dhym.t_plus, p.samples)) {
    os << format_real(t) << ',' << format_real(eval_phi(sol.profile, t)) << ','
       << format_real(eval_psi(sol.profile, t)) << ',' << format_real(eval_H(sol.dhym, t)) << ',';
    if (t * t + sol.dhym.Cprime > 0.0) {
      const double im = phase_and_radius(sol.dhym, t).im_part;
      const double sc = scalar_residual(sol.profile, sol.surface, sol.bundle, t);
      worst_im = std::max(worst_im, std::abs(im));
      worst_scalar = std::max(worst_scalar, std::abs(sc));
      os << format_real(im) << ',' << format_real(sc);
    } else {
      os << ',';
    }
    os << '\n';
  }
  const int rc = emit(os.str(), p.out_path, out, err);
  if (rc != kOk) return rc;
  return worst_im <= 1e-10 && worst_scalar <= 1e-8 ? kOk : kResidualFailure;
}

int cmd_tke(const Params& p, bool solve_beta, std::ostream& out, std::ostream& err) {
  const SolveRequest r = request_of(p);
  const SurfaceParams s = make_surface(r.k, r.h, r.kprime);
  const BundleClass b{r.k1, r.k2};
  canonicalize(b);
  const double beta0 = p.beta0.value_or(1.0);
  const TkeAnalysis a = analyze_tke(s, b, beta0);
  out << "gamma = " << format_real(a.gamma) << '\n'
      << "F_value = " << format_real(a.F_value) << '\n'
      << "H_at_1 = " << format_real(a.H_at_1) << '\n'
      << "beta_bar = " << format_real(a.beta_bar) << '\n'
      << "beta0 = " << format_real(beta0) << '\n'
      << "condition_residual = " << format_real(a.condition_residual) << '\n';
  if (!solve_beta) return kOk;
  const Beta0Solution sb = solve_beta0(s, b);
  if (!sb.beta0) {
    err << "error: no cone angle realizes the twisted Kahler-Einstein reduction: " << sb.reason
        << "; H attains (" << format_real(sb.attained_lo) << ", " << format_real(sb.attained_hi)
        << ")\n";
    return kResidualFailure;
  }
  const ProfilePoly prof = conical_coefficients(s, b, *sb.beta0);
  out << "solved_beta0 = " << format_real(*sb.beta0) << '\n'
      << "solved_condition_residual = " << format_real(condition_residual(s, b, *sb.beta0)) << '\n'
      << "solved_d1 = " << format_real(prof.d1) << '\n'
      << "ricci_class = " << pair(ricci_class(s, *sb.beta0, prof.beta_inf)) << '\n';
  return kOk;
}

int cmd_figure2(const Params& p, std::ostream& out, std::ostream& err) {
  if (p.samples < 2) throw Error(ErrorKind::Validation, "--samples must be at least 2");
  const double bar = beta_asymptote(p.k, p.kprime, p.h);
  std::ostringstream os;
  os << "# H(k, k', h, beta) for k=" << p.k << " kprime=" << format_real(p.kprime) << " h=" << p.h
     << "; vertical asymptote beta_bar = " << format_real(bar) << '\n';
  os << "beta,H\n";
  for (double beta : uniform_grid(0.0, 1.0, p.samples)) {
    try {
      const double H = H_beta(p.k, p.kprime, p.h, beta);
      os << format_real(beta) << ',' << format_real(H) << '\n';
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Pole) throw;
      os << format_real(beta) << ",\n";
    }
  }
  return emit(os.str(), p.out_path, out, err);
}

int cmd_limits(const Params& p, const std::string& mode, std::vector<double> alphas,
               std::ostream& out, std::ostream& err) {
  const SolveRequest r = request_of(p);
  const SurfaceParams s = make_surface(r.k, r.h, r.kprime);
  const BundleClass b{r.k1, r.k2};
  const bool large = mode == "large";
  if (alphas.empty())
    alphas = large ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4} : std::vector<double>{1e2, 1e3, 1e4};
  const ScaledFamily fam = make_family(s, b, alphas);
  const ConvergenceReport rep = large ? large_radius_check(fam) : small_radius_check(fam);
  std::ostringstream os;
  os << "# " << mode << "-radius study; errors are sup over t of |H/alpha' - limit|\n";
  os << "alpha_prime,sup_error,nu_sup,alpha_scaled\n";
  for (const ConvergencePoint& pt : rep.points)
    os << format_real(pt.alpha_prime) << ',' << format_real(pt.sup_error) << ','
       << format_real(pt.nu_sup) << ',' << format_real(pt.alpha_scaled) << '\n';
  os << "# fitted_order = " << format_real(rep.fitted_order) << '\n'
     << "# alpha_limit = " << format_real(rep.alpha_limit) << '\n'
     << "# alpha_limit_rel_error = " << format_real(rep.alpha_limit_rel_error) << '\n'
     << "# profile_cauchy_gap = " << format_real(rep.profile_cauchy_gap) << '\n'
     << "# " << (large ? "mu" : "c1") << " = " << format_real(rep.limit_constant)
     << " (expected " << format_real(rep.limit_constant_expected) << ", spread "
     << format_real(rep.limit_constant_spread) << ")\n"
     << "# s(omega) fit: gamma = " << format_real(rep.fit_gamma) << " (expected "
     << format_real(rep.fit_gamma_expected) << "), c = " << format_real(rep.fit_c)
     << ", residual = " << format_real(rep.fit_residual) << '\n';
  if (!large) {
    const SmallRadiusConstants sc = small_radius_constants(s, b);
    os << "# C_hat = " << format_real(sc.C_hat) << ", branch = " << (sc.branch > 0 ? '+' : '-')
       << '\n';
  }
  return emit(os.str(), p.out_path, out, err);
}

int cmd_verify(const std::string& in_path, std::ostream& out, std::ostream& err) {
  std::ifstream f(in_path);
  if (!f) {
    err << "error: cannot read '" << in_path << "'\n";
    return kUsage;
  }
  const std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  const SolutionDescriptor stored = parse_descriptor(text);
  const SolutionDescriptor fresh = describe(stored.request, solve(stored.request));

  struct Item {
    const char* name;
    double a, b;
  };
  const Item items[] = {
      {"C", stored.C, fresh.C},
      {"Cprime", stored.Cprime, fresh.Cprime},
      {"alpha", stored.alpha, fresh.alpha},
      {"d0", stored.d0, fresh.d0},
      {"d1", stored.d1, fresh.d1},
      {"c3", stored.c3, fresh.c3},
      {"cR", stored.cR, fresh.cR},
      {"beta_inf", stored.beta_inf, fresh.beta_inf},
      {"max_dhym_residual", stored.residuals.max_dhym_residual, fresh.residuals.max_dhym_residual},
      {"max_im_part", stored.residuals.max_im_part, fresh.residuals.max_im_part},
      {"max_scalar_residual", stored.residuals.max_scalar_residual, fresh.residuals.max_scalar_residual},
      {"boundary_H_error", stored.residuals.boundary_H_error, fresh.residuals.boundary_H_error},
      {"boundary_psi_error", stored.residuals.boundary_psi_error, fresh.residuals.boundary_psi_error},
      {"boundary_slope_error", stored.residuals.boundary_slope_error, fresh.residuals.boundary_slope_error},
  };
  bool ok = fresh.residuals.passed;
  for (const Item& it : items) {
    const bool close = std::abs(it.a - it.b) <= 1e-12 * std::max(1.0, std::abs(it.a));
    out << it.name << ": stored " << format_real(it.a) << " recomputed " << format_real(it.b)
        << (close ? " ok" : " MISMATCH") << '\n';
    ok = ok && close;
  }
  out << "verdict = " << (ok ? "reproduced" : "mismatch") << '\n';
  return ok ? kOk : kResidualFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit deformed Hermitian Yang-Mills solutions on ruled surfaces", "dhym"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");

  Params p;
  bool solve_beta = false;
  std::string mode = "large";
  std::vector<double> alphas;
  std::string in_path;

  auto* check = app.add_subcommand("check", "stability, phase and cohomology of a class");
  add_bundle(check, p);

  auto* solve_cmd = app.add_subcommand("solve", "solve and emit a solution descriptor");
  add_bundle(solve_cmd, p);
  solve_cmd->add_option("--beta0", p.beta0, "cone angle parameter along E0, in (0, 1]");
  solve_cmd->add_option("--alpha-prime", p.alpha_prime, "scale the class by alpha'");
  solve_cmd->add_flag("--allow-semistable", p.allow_semistable, "accept the semistable boundary case");
  solve_cmd->add_option("--out", p.out_path, "write to a file instead of stdout");

  auto* profile = app.add_subcommand("profile", "tabulate phi, psi, H and residuals");
  add_bundle(profile, p);
  profile->add_option("--beta0", p.beta0, "cone angle parameter along E0, in (0, 1]");
  profile->add_option("--alpha-prime", p.alpha_prime, "scale the class by alpha'");
  profile->add_flag("--allow-semistable", p.allow_semistable, "accept the semistable boundary case");
  profile->add_option("--samples", p.samples, "number of rows")->capture_default_str();
  profile->add_option("--out", p.out_path, "write to a file instead of stdout");

  auto* tke = app.add_subcommand("tke", "twisted Kahler-Einstein reduction analysis");
  add_bundle(tke, p);
  tke->add_option("--beta0", p.beta0, "cone angle parameter used for the residual (default 1)");
  tke->add_flag("--solve-beta", solve_beta, "solve for the cone angle realizing the reduction");

  auto* fig2 = app.add_subcommand("figure2", "the curve beta -> H(k, k', h, beta)");
  add_surface(fig2, p);
  fig2->add_option("--samples", p.samples, "number of beta samples on [0, 1]")->capture_default_str();
  fig2->add_option("--out", p.out_path, "write to a file instead of stdout");

  auto* lim = app.add_subcommand("limits", "large/small radius convergence study");
  add_bundle(lim, p);
  lim->add_option("--mode", mode, "large or small")->check(CLI::IsMember({"large", "small"}))->capture_default_str();
  lim->add_option("--alphas", alphas, "comma-separated alpha' samples")->delimiter(',');
  lim->add_option("--out", p.out_path, "write to a file instead of stdout");

  auto* verify = app.add_subcommand("verify", "recompute a stored descriptor and compare");
  verify->add_option("--in", in_path, "descriptor written by solve --out")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(p, out);
    if (*solve_cmd) return cmd_solve(p, out, err);
    if (*profile) return cmd_profile(p, out, err);
    if (*tke) return cmd_tke(p, solve_beta, out, err);
    if (*fig2) return cmd_figure2(p, out, err);
    if (*lim) return cmd_limits(p, mode, alphas, out, err);
    if (*verify) return cmd_verify(in_path, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::NoSolution: return kUnstable;
      case ErrorKind::Consistency:
      case ErrorKind::PositivityViolation:
      case ErrorKind::IntegrationFailure:
      case ErrorKind::NonConvergence: return kResidualFailure;
      default: return kUsage;
    }
  }
  return kUsage;
}

}  // namespace dhym::cli
