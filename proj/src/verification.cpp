#include "casimir/verification.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "casimir/adiabatic.hpp"
#include "casimir/cli.hpp"
#include "casimir/dressing.hpp"
#include "casimir/steady_state.hpp"
#include "casimir/transient.hpp"

namespace casimir {

namespace {

double error_bar_ratio(const ForceValue& a, const ForceValue& b) {
  const double d = std::abs(a.f_z - b.f_z);
  return d == 0.0 ? 0.0 : d / (a.abs_error_estimate + b.abs_error_estimate);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Taylor-remainder form 2^-n [F0(re) - sum_{j<n} F0^(j)(rs) dr^j / j!].
double taylor_form(int n, double rs, double re, const AtomParams& p) {
  const std::vector<double> d = retardation_force_derivs(rs, n - 1, p);
  double v = stationary_retardation_force(re, p).f_z;
  double fact = 1.0;
  for (int j = 0; j < n; ++j) {
    if (j > 0) fact *= j;
    v -= d[j] * std::pow(re - rs, j) / fact;
  }
  return std::ldexp(v, -n);
}

}  // namespace

AtomParams figure_params() { return make_atom_params(0.057 / 137.036, 1.0, 1.0); }

CheckResult check_far_field(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const double r = 100.0 * p.c / p.omega0;
  const double got = std::pow(r, 4) * stationary_potential(r, p).u;
  const double want = -3.0 * p.alpha0 * p.c / (8.0 * std::numbers::pi);
  const double rel = rel_diff(got, want);
  return {"1", "far-field law", rel <= 0.01 * opt.tolerance_scale,
          fmt("r^4 U = %.10g, -3 alpha0 c/(8 pi) = %.10g, rel %.3e (tol 1e-2)", got, want, rel)};
}

CheckResult check_near_field(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const double r = 0.01 * p.c / p.omega0;
  const double got = std::pow(r, 3) * stationary_potential(r, p).u;
  const double want = -p.alpha0 * p.omega0 / 8.0;
  const double rel = rel_diff(got, want);
  return {"2", "near-field law", rel <= 0.01 * opt.tolerance_scale,
          fmt("r^3 U = %.10g, -alpha0 omega0/8 = %.10g, rel %.3e (tol 1e-2)", got, want, rel)};
}

CheckResult check_representation(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const QuadratureConfig cfg;
  double worst = 0.0;
  double worst_r = 0.0;
  for (double r : log_grid(0.01, 100.0, 20)) {
    const double x = stationary_retardation_force(r, p).f_z;
    const double k = stationary_retardation_force_kform(r, p, cfg).f_z;
    const double rel = rel_diff(k, x);
    if (rel > worst) {
      worst = rel;
      worst_r = r;
    }
  }
  return {"3", "x-form vs k-form", worst <= 1e-6 * opt.tolerance_scale,
          fmt("max rel diff %.3e at r = %.4g over 20 log points in [0.01, 100] (tol 1e-6)", worst,
              worst_r)};
}

CheckResult check_transient_spike(const VerifyOptions& opt) {
  const AtomParams p = figure_params();
  const QuadratureConfig cfg;
  const double r = 3000.0;
  std::vector<double> taus(200);
  for (int i = 0; i < 200; ++i) taus[i] = 12000.0 * i / 199.0;
  const double step = taus[1] - taus[0];
  const TransientCurve curve = transient_sweep(r, taus, p, cfg);
  std::vector<double> f;
  for (const TransientSample& s : curve.samples) f.push_back(s.f_z);
  const double ss = stationary_retardation_force(r, p).f_z;
  const std::size_t idx = peak_deviation_index(f, std::vector<double>(f.size(), ss));
  const double late = transient_force(r, 60000.0, p, cfg).f_z;
  const double ring = rel_diff(late, ss);
  const bool at_spike = std::abs(taus[idx] - 2.0 * r) <= step * opt.tolerance_scale;
  const bool rung_down = ring <= 0.02 * opt.tolerance_scale;
  return {"4", "transient spike at the round trip", at_spike && rung_down,
          fmt("peak deviation at tau = %.2f (target 6000, step %.2f), F/Fss there = %.4g; "
              "tau = 60000: rel to stationary %.3e (tol 2e-2)",
              taus[idx], step, f[idx] / ss, ring)};
}

CheckResult check_snapshot_spike(const VerifyOptions& opt) {
  const AtomParams p = figure_params();
  const QuadratureConfig cfg;
  const double tau = 6000.0;
  // 40 points so that no row sits on the light cone r = c tau / 2, where the
  // force has a pole
  const double step = 2000.0 / 39.0;
  std::vector<double> rs;
  for (int i = 0; i < 40; ++i) rs.push_back(2000.0 + step * i);
  const auto rows = snapshot_sweep(tau, rs, p, cfg);
  std::vector<double> coeff;
  std::vector<double> ref;
  for (const SnapshotRow& row : rows) {
    coeff.push_back(row.coeff_total);
    ref.push_back(std::pow(row.r, 4) * stationary_total_force(row.r, p).f_z);
  }
  const std::size_t idx = peak_deviation_index(coeff, ref);
  const bool located = std::abs(rs[idx] - 0.5 * tau) <= step * opt.tolerance_scale;
  double worst = 0.0;
  double worst_r = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] >= 0.5 * tau) continue;
    const double rel = rel_diff(coeff[i], ref[i]);
    if (rel > worst) {
      worst = rel;
      worst_r = rs[i];
    }
  }
  const bool settled = worst <= 0.05 * opt.tolerance_scale;
  return {"5", "snapshot spike and settled inner rows", located && settled,
          fmt("feature at R = %.1f (target 3000, step %.2f); rows R < 3000: worst rel deviation "
              "from stationary coefficient %.3e at R = %.1f (tol 5e-2)",
              rs[idx], step, worst, worst_r)};
}

CheckResult check_factor_two(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  double worst = 0.0;
  for (double r : {0.1, 1.0, 10.0}) {
    const double ratio =
        adiabatic_retardation_force(r, kInfinity, p).f_z / stationary_retardation_force(r, p).f_z;
    worst = std::max(worst, std::abs(ratio - 2.0));
  }
  return {"6", "factor of two after release from infinity", worst <= 1e-9 * opt.tolerance_scale,
          fmt("max |ratio - 2| = %.3e for r in {0.1, 1, 10} (tol 1e-9)", worst)};
}

CheckResult check_nested_identities(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const QuadratureConfig cfg;
  struct Case {
    const char* name;
    Trajectory traj;
  };
  const std::vector<Case> cases = {{"cosine 200->0.5", cosine_trajectory(200.0, 0.5, 100.0, 2000)},
                                   {"smoothstep 50->1", smoothstep_trajectory(50.0, 1.0, 100.0, 2000)}};
  bool ok = true;
  std::ostringstream detail;
  for (const Case& c : cases) {
    const double fs = stationary_retardation_force(c.traj.r_start(), p).f_z;
    const double fe = stationary_retardation_force(c.traj.r_end(), p).f_z;
    const double df = fe - fs;
    const auto terms = series_terms_nested(3, c.traj, p, cfg);
    double worst = 0.0;
    double slack = 0.0;
    for (int n = 1; n <= 3; ++n) {
      worst = std::max(worst, rel_diff(terms[n - 1].value, std::ldexp(df, -n)));
      slack += 1e-4 * std::ldexp(std::abs(df), -n);
    }
    const SeriesSum s = series_sum(c.traj, 6, p, cfg);
    const double closed = 2.0 * fe - fs;
    const double gap = std::abs(s.value - closed);
    const double allowed = s.remainder_bound + opt.tolerance_scale * slack + s.abs_error;
    const bool terms_ok = worst <= 1e-4 * opt.tolerance_scale;
    const bool bracket_ok = gap <= allowed;
    ok = ok && terms_ok && bracket_ok;
    detail << fmt("%s: max rel |term - 2^-n dF| %.2e (tol 1e-4), series gap/2^-6|dF| = %.9f; ",
                  c.name, worst, gap / s.remainder_bound);
  }
  std::string d = detail.str();
  d.resize(d.size() - 2);
  return {"7", "nested series identities", ok, d};
}

CheckResult nested_near_release_diagnostic() {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const QuadratureConfig cfg;
  const Trajectory traj = cosine_trajectory(2.0, 1.0, 10.0, 2000);
  const auto terms = series_terms_nested(3, traj, p, cfg);
  const double df = stationary_retardation_force(1.0, p).f_z - stationary_retardation_force(2.0, p).f_z;
  std::ostringstream d;
  for (int n = 1; n <= 3; ++n) {
    d << fmt("n=%d: rel to 2^-n dF %+.3e, rel to Taylor form %+.1e; ", n,
             terms[n - 1].value / std::ldexp(df, -n) - 1.0,
             terms[n - 1].value / taylor_form(n, 2.0, 1.0, p) - 1.0);
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {"7b", "nested terms after release from r0 = 2", true, s};
}

CheckResult check_recursion_order(const VerifyOptions& opt) {
  const AtomParams p = scaled_couplings(make_atom_params(1.0, 1.0, 1.0), 1e-2);
  const ModeGrid grid = make_mode_grid({1.5}, 6.0, {{0.3, 0.2}, {1.0, 2.0}});
  const PathSpec path = make_path({0.1, 0.0, 1.0}, {0.3, 0.1, 1.3}, 0.0, 2.0);
  const cplx exact = second_order_A(path, grid, p);
  std::vector<double> err;
  for (int steps : {100, 200, 400, 800}) {
    err.push_back(std::abs(run_recursion(path, grid, p, steps).a - exact));
  }
  bool ok = grid.modes.size() == 4;
  std::ostringstream d;
  d << fmt("%zu modes, |A_rec - A_2| =", grid.modes.size());
  for (double e : err) d << fmt(" %.3e", e);
  d << "; orders";
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double order = std::log2(err[i] / err[i + 1]);
    d << fmt(" %.3f", order);
    ok = ok && std::abs(order - 1.0) <= 0.2 * opt.tolerance_scale;
  }
  d << " (allowed [0.8, 1.2])";
  return {"8", "dressing recursion convergence order", ok, d.str()};
}

CheckResult check_momentum_force(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = make_mode_grid({1.0, 2.0, 3.0}, 5.0, {{0.2, 0.0}, {0.7, 1.0}, {1.2, 2.5}});
  const double r = 1.2;
  const double v = 0.05;
  double worst_force = 0.0;
  double worst_z = 0.0;
  bool invariant = true;
  for (double tau : {0.5, 2.0, 4.0}) {
    auto pz = [&](double t) { return momentum_expectation(r, v, t, grid, p)[2]; };
    const double h = 1e-3;
    const double d1 = (pz(tau + h) - pz(tau - h)) / (2.0 * h);
    const double d2 = (pz(tau + 0.5 * h) - pz(tau - 0.5 * h)) / h;
    const double deriv = (4.0 * d2 - d1) / 3.0;
    worst_force = std::max(worst_force, rel_diff(deriv, truncated_force(r, v, tau, grid, p)));
    const double from_z = momentum_from_generating_function(r, {0.0, 0.0, v}, tau, grid, p);
    worst_z = std::max(worst_z, rel_diff(from_z, pz(tau)));
    const Vec3 moving = momentum_expectation(r, Vec3{0.3, -0.2, v}, tau, grid, p);
    const Vec3 still = momentum_expectation(r, Vec3{0.0, 0.0, v}, tau, grid, p);
    invariant = invariant && moving == still && moving[0] == 0.0 && moving[1] == 0.0;
  }
  const bool ok = worst_force <= 1e-6 * opt.tolerance_scale &&
                  worst_z <= 1e-8 * opt.tolerance_scale && invariant;
  return {"9", "momentum derivative vs force mode sum", ok,
          fmt("max rel |dP/dtau - F| %.3e (tol 1e-6); generating-function momentum rel %.3e "
              "(tol 1e-8); parallel velocity leaves P unchanged: %s",
              worst_force, worst_z, invariant ? "yes" : "no")};
}

CheckResult check_invariants(const VerifyOptions& opt) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const QuadratureConfig cfg;
  const double s = opt.tolerance_scale;

  double grad = 0.0;
  bool finite = true;
  for (double r : log_grid(0.01, 100.0, 12)) {
    const double tot = stationary_total_force(r, p).f_z;
    grad = std::max(grad, rel_diff(stationary_potential_gradient_force(r, p).f_z, tot));
    for (double r0 : {2.0 * r, kInfinity}) {
      const double want = tot + stationary_retardation_force(r, p).f_z;
      grad = std::max(grad, rel_diff(adiabatic_potential_gradient_force(r, r0, p).f_z, want));
      finite = finite && std::isfinite(adiabatic_total_force(r, r0, p).f_z) &&
               std::isfinite(adiabatic_potential(r, r0, p).u);
    }
    finite = finite && std::isfinite(tot) && std::isfinite(stationary_potential(r, p).u);
  }

  QuadratureConfig wide = cfg;
  wide.k_max = 2.0 * cfg.k_max;
  double cutoff_ratio = 0.0;
  for (double r : {0.1, 1.0, 10.0}) {
    const ForceValue a = stationary_retardation_force_kform(r, p, cfg);
    const ForceValue b = stationary_retardation_force_kform(r, p, wide);
    cutoff_ratio = std::max(cutoff_ratio, error_bar_ratio(a, b));
  }
  const AtomParams fp = figure_params();
  for (double tau : {3000.0, 6030.0}) {
    const ForceValue a = transient_force(3000.0, tau, fp, cfg);
    const ForceValue b = transient_force(3000.0, tau, fp, wide);
    finite = finite && std::isfinite(a.f_z);
    cutoff_ratio = std::max(cutoff_ratio, error_bar_ratio(a, b));
  }

  RunConfig rc;
  rc.r_grid = "0.05:20:7:log";
  std::ostringstream a1;
  std::ostringstream a2;
  cmd_stationary(rc, a1);
  cmd_stationary(rc, a2);
  rc.r0 = 30.0;
  std::ostringstream b1;
  std::ostringstream b2;
  cmd_adiabatic(rc, b1);
  cmd_adiabatic(rc, b2);
  const bool deterministic = a1.str() == a2.str() && b1.str() == b2.str();

  const bool ok = grad <= 1e-8 * s && finite && cutoff_ratio <= 1.0 * s && deterministic;
  return {"10", "invariant suite", ok,
          fmt("gradient law max rel %.3e (tol 1e-8); forces finite and real: %s; cutoff doubling "
              "max |dF|/(err1+err2) = %.3g (tol 1); CSV byte-identical: %s",
              grad, finite ? "yes" : "no", cutoff_ratio, deterministic ? "yes" : "no")};
}

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(timed([&] { return check_far_field(opt); }));
  out.push_back(timed([&] { return check_near_field(opt); }));
  out.push_back(timed([&] { return check_representation(opt); }));
  out.push_back(timed([&] { return check_factor_two(opt); }));
  out.push_back(timed([&] { return check_nested_identities(opt); }));
  out.push_back(timed([&] { return check_recursion_order(opt); }));
  out.push_back(timed([&] { return check_momentum_force(opt); }));
  out.push_back(timed([&] { return check_invariants(opt); }));
  return out;
}

}  // namespace casimir
