#include "casimir/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

constexpr int kMaxNested = 3;

double f0(double r, const AtomParams& p) {
  return std::isinf(r) ? 0.0 : stationary_retardation_force(r, p).f_z;
}

double f0_err(double r, const AtomParams& p) {
  return std::isinf(r) ? 0.0 : stationary_retardation_force(r, p).abs_error_estimate;
}

void require_r0(double r0) {
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive or infinite");
}

// Gauss-Legendre nodes on [-1, 1] with the cumulative integration matrix
// S[q][j] = int_{-1}^{x_q} L_j(x) dx of the Lagrange basis.
struct SpectralRule {
  std::vector<double> x;
  std::vector<double> w;
  std::vector<std::vector<double>> s;
};

std::vector<double> legendre_values(int kmax, double x) {
  std::vector<double> pk(kmax + 1);
  pk[0] = 1.0;
  if (kmax > 0) pk[1] = x;
  for (int k = 1; k < kmax; ++k) pk[k + 1] = ((2 * k + 1) * x * pk[k] - k * pk[k - 1]) / (k + 1);
  return pk;
}

template <int P>
SpectralRule make_rule() {
  using G = boost::math::quadrature::gauss<double, P>;
  SpectralRule rule;
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  for (std::size_t j = 0; j < ab.size(); ++j) {
    if (ab[j] == 0.0) {
      rule.x.push_back(0.0);
      rule.w.push_back(wt[j]);
      continue;
    }
    rule.x.push_back(-ab[j]);
    rule.w.push_back(wt[j]);
    rule.x.push_back(ab[j]);
    rule.w.push_back(wt[j]);
  }
  const int n = static_cast<int>(rule.x.size());
  // L_j = sum_k w_j P_k(x_j) (2k+1)/2 P_k; int_{-1}^{x} P_k = (P_{k+1} - P_{k-1}) / (2k+1)
  std::vector<std::vector<double>> pn(n);
  for (int j = 0; j < n; ++j) pn[j] = legendre_values(n, rule.x[j]);
  rule.s.assign(n, std::vector<double>(n, 0.0));
  for (int q = 0; q < n; ++q) {
    for (int j = 0; j < n; ++j) {
      double acc = 0.5 * (rule.x[q] + 1.0);
      for (int k = 1; k < n; ++k) acc += 0.5 * pn[j][k] * (pn[q][k + 1] - pn[q][k - 1]);
      rule.s[q][j] = rule.w[j] * acc;
    }
  }
  return rule;
}

const SpectralRule& fine_rule() {
  static const SpectralRule r = make_rule<12>();
  return r;
}

const SpectralRule& coarse_rule() {
  static const SpectralRule r = make_rule<8>();
  return r;
}

struct PathPoint {
  double r;
  double v;
};

PathPoint hermite(const TrajectorySample& a, const TrajectorySample& b, double s) {
  const double h = b.t - a.t;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double r = (2 * s3 - 3 * s2 + 1) * a.r + (s3 - 2 * s2 + s) * h * a.v +
                   (-2 * s3 + 3 * s2) * b.r + (s3 - s2) * h * b.v;
  const double dr = (6 * s2 - 6 * s) * a.r + (3 * s2 - 4 * s + 1) * h * a.v +
                    (-6 * s2 + 6 * s) * b.r + (3 * s2 - 2 * s) * h * b.v;
  return {r, dr / h};
}

std::vector<double> nested_with_rule(int nmax, const Trajectory& traj, const AtomParams& p,
                                     const SpectralRule& rule) {
  const auto& smp = traj.samples;
  const std::size_t intervals = smp.size() - 1;
  const std::size_t m = rule.x.size();

  std::vector<double> half_v(intervals * m);
  std::vector<std::vector<double>> deriv(intervals * m);
  for (std::size_t i = 0; i < intervals; ++i) {
    for (std::size_t q = 0; q < m; ++q) {
      const PathPoint pt = hermite(smp[i], smp[i + 1], 0.5 * (rule.x[q] + 1.0));
      if (!(pt.r > 0.0)) throw DomainError("interpolated trajectory reaches the wall");
      half_v[i * m + q] = 0.5 * pt.v;
      deriv[i * m + q] = retardation_force_derivs(pt.r, nmax, p);
    }
  }

  std::vector<double> out(nmax);
  std::vector<double> f(intervals * m);
  std::vector<double> g(intervals * m);
  for (int n = 1; n <= nmax; ++n) {
    // innermost integrand, then n - 1 further cumulative integrations
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = half_v[k] * deriv[k][n];
    double total = 0.0;
    for (int level = 1; level <= n; ++level) {
      double start = 0.0;
      for (std::size_t i = 0; i < intervals; ++i) {
        const double hh = 0.5 * (smp[i + 1].t - smp[i].t);
        const double* fi = &f[i * m];
        double end = start;
        for (std::size_t q = 0; q < m; ++q) {
          double acc = 0.0;
          for (std::size_t j = 0; j < m; ++j) acc += rule.s[q][j] * fi[j];
          g[i * m + q] = start + hh * acc;
          end += hh * rule.w[q] * fi[q];
        }
        start = end;
      }
      total = start;
      if (level < n) {
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = half_v[k] * g[k];
      }
    }
    out[n - 1] = total;
  }
  return out;
}

}  // namespace

Trajectory make_trajectory(std::vector<TrajectorySample> samples, double consistency_tol) {
  if (samples.size() < 3) throw ValidationError("trajectory needs at least 3 samples");
  double vmax = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const std::string where = "sample " + std::to_string(i) + " (t=" + std::to_string(s.t) + ")";
    if (!std::isfinite(s.t) || !std::isfinite(s.r) || !std::isfinite(s.v)) {
      throw ValidationError(where + ": non-finite value");
    }
    if (!(s.r > 0.0)) throw ValidationError(where + ": r must be positive");
    if (i > 0 && !(s.t > samples[i - 1].t)) throw ValidationError(where + ": t not increasing");
    vmax = std::max(vmax, std::abs(s.v));
  }
  if (std::abs(samples.front().v) > 1e-12 * std::max(vmax, 1e-300)) {
    throw ValidationError("sample 0: velocity must vanish at release");
  }
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double cd = (samples[i + 1].r - samples[i - 1].r) / (samples[i + 1].t - samples[i - 1].t);
    if (std::abs(cd - samples[i].v) > consistency_tol * vmax) {
      throw ValidationError("sample " + std::to_string(i) + " (t=" + std::to_string(samples[i].t) +
                            "): v inconsistent with r (central difference " + std::to_string(cd) +
                            ")");
    }
  }
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    up = up && samples[i].r >= samples[i - 1].r;
    down = down && samples[i].r <= samples[i - 1].r;
  }
  Trajectory tr;
  tr.samples = std::move(samples);
  tr.monotone = up || down;
  return tr;
}

Trajectory parse_trajectory(std::istream& in, double consistency_tol) {
  std::vector<TrajectorySample> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TrajectorySample s{};
    if (!(ls >> s.t)) {
      std::string rest;
      ls.clear();
      if (ls >> rest) throw ValidationError("line " + std::to_string(lineno) + ": expected 't r v'");
      continue;
    }
    std::string extra;
    if (!(ls >> s.r >> s.v) || (ls >> extra)) {
      throw ValidationError("line " + std::to_string(lineno) + ": expected exactly 't r v'");
    }
    samples.push_back(s);
  }
  return make_trajectory(std::move(samples), consistency_tol);
}

Trajectory load_trajectory(const std::string& path, double consistency_tol) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open trajectory file " + path);
  return parse_trajectory(in, consistency_tol);
}

Trajectory cosine_trajectory(double r0, double r1, double duration, int samples) {
  if (samples < 3 || !(duration > 0.0)) throw DomainError("bad trajectory grid");
  std::vector<TrajectorySample> s(samples);
  const double w = std::numbers::pi / duration;
  for (int i = 0; i < samples; ++i) {
    const double t = duration * i / (samples - 1);
    s[i] = {t, r0 + 0.5 * (r1 - r0) * (1.0 - std::cos(w * t)), 0.5 * (r1 - r0) * w * std::sin(w * t)};
  }
  s.front().v = 0.0;
  s.back().r = r1;
  return make_trajectory(std::move(s));
}

Trajectory smoothstep_trajectory(double r0, double r1, double duration, int samples) {
  if (samples < 3 || !(duration > 0.0)) throw DomainError("bad trajectory grid");
  std::vector<TrajectorySample> s(samples);
  for (int i = 0; i < samples; ++i) {
    const double x = double(i) / (samples - 1);
    s[i] = {duration * x, r0 + (r1 - r0) * x * x * (3.0 - 2.0 * x),
            (r1 - r0) * 6.0 * x * (1.0 - x) / duration};
  }
  return make_trajectory(std::move(s));
}

ForceValue adiabatic_retardation_force(double r, double r0, const AtomParams& p) {
  require_r0(r0);
  const ForceValue f = stationary_retardation_force(r, p);
  return {2.0 * f.f_z - f0(r0, p), 2.0 * f.abs_error_estimate + f0_err(r0, p), f.regime};
}

ForceValue adiabatic_total_force(double r, double r0, const AtomParams& p) {
  require_r0(r0);
  const ForceValue st = stationary_total_force(r, p);
  const ForceValue f = stationary_retardation_force(r, p);
  return {st.f_z + (f.f_z - f0(r0, p)),
          st.abs_error_estimate + f.abs_error_estimate + f0_err(r0, p), st.regime};
}

PotentialValue adiabatic_potential(double r, double r0, const AtomParams& p) {
  require_r0(r0);
  const PotentialValue u = stationary_potential(r, p);
  const double pre = p.alpha0 * p.omega0 * p.omega0 / (4.0 * std::numbers::pi);
  const KernelEval kr = sinc_kernel_deriv(r, 2, p);
  KernelEval k0{0.0, 0.0};
  if (!std::isinf(r0)) k0 = sinc_kernel_deriv(r0, 2, p);
  return {u.u + pre * (kr.value - k0.value),
          u.abs_error_estimate + pre * (kr.abs_error_estimate + k0.abs_error_estimate)};
}

ForceValue adiabatic_potential_gradient_force(double r, double r0, const AtomParams& p) {
  require_r0(r0);
  const ForceValue g = stationary_potential_gradient_force(r, p);
  const ForceValue f = stationary_retardation_force(r, p);
  return {g.f_z + f.f_z, g.abs_error_estimate + f.abs_error_estimate, g.regime};
}

double steady_state_expansion_term(int n, double r, double tau, const AtomParams& p) {
  if (n < 0 || n > 2) throw DomainError("steady-state expansion implemented for 0 <= n <= 2");
  const std::vector<double> d = retardation_force_derivs(r, n, p);
  return std::pow(0.5 * tau, n) * d[n];
}

std::vector<NestedResult> series_terms_nested(int nmax, const Trajectory& traj,
                                              const AtomParams& p, const QuadratureConfig& cfg) {
  if (nmax < 1 || nmax > kMaxNested) throw DomainError("nested series terms need 1 <= n <= 3");
  if (traj.samples.size() < 2) throw DomainError("trajectory too short");
  validate(cfg);
  const std::vector<double> fine = nested_with_rule(nmax, traj, p, fine_rule());
  const std::vector<double> coarse = nested_with_rule(nmax, traj, p, coarse_rule());
  const double scale = std::abs(f0(traj.r_end(), p)) + std::abs(f0(traj.r_start(), p));
  std::vector<NestedResult> out(nmax);
  for (int n = 1; n <= nmax; ++n) {
    const double err = std::abs(fine[n - 1] - coarse[n - 1]);
    if (err > cfg.rel_tol * std::ldexp(scale, -n)) {
      throw ConvergenceError("nested trajectory quadrature did not reach rel_tol", fine[n - 1],
                             coarse[n - 1]);
    }
    out[n - 1] = {fine[n - 1], err};
  }
  return out;
}

NestedResult series_term_nested(int n, const Trajectory& traj, const AtomParams& p,
                                const QuadratureConfig& cfg) {
  if (n < 1 || n > kMaxNested) throw DomainError("nested series terms need 1 <= n <= 3");
  return series_terms_nested(n, traj, p, cfg)[n - 1];
}

SeriesSum series_sum(const Trajectory& traj, int n_max, const AtomParams& p,
                     const QuadratureConfig& cfg) {
  if (n_max < 1) throw DomainError("series needs n_max >= 1");
  const double fe = f0(traj.r_end(), p);
  const double df = fe - f0(traj.r_start(), p);
  double value = fe;
  double err = f0_err(traj.r_end(), p);
  const int nested = std::min(n_max, kMaxNested);
  if (df != 0.0) {
    for (const NestedResult& t : series_terms_nested(nested, traj, p, cfg)) {
      value += t.value;
      err += t.abs_error;
    }
  }
  for (int n = nested + 1; n <= n_max; ++n) value += std::ldexp(df, -n);
  return {value, std::ldexp(std::abs(df), -n_max), err};
}

}  // namespace casimir
