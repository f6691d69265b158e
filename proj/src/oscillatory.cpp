#include "casimir/oscillatory.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr int kPanelPoints = 20;
constexpr double kDecayLengths = 40.0;
const cplx I1{0.0, 1.0};

struct PanelRule {
  std::array<double, kPanelPoints> x;
  std::array<double, kPanelPoints> w;
};

const PanelRule& panel_rule() {
  static const PanelRule rule = [] {
    using G = boost::math::quadrature::gauss<double, kPanelPoints>;
    PanelRule r{};
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    int i = 0;
    for (std::size_t j = 0; j < ab.size(); ++j) {
      r.x[i] = -ab[j];
      r.w[i++] = wt[j];
      r.x[i] = ab[j];
      r.w[i++] = wt[j];
    }
    return r;
  }();
  return rule;
}

// Neville tableau at x = 0; returns the diagonal extrapolants.
std::vector<cplx> extrapolate_to_zero(const std::vector<double>& x, const std::vector<cplx>& y) {
  const std::size_t n = x.size();
  std::vector<cplx> p(y);
  std::vector<cplx> diag{p[0]};
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    }
    diag.push_back(p[0]);
  }
  return diag;
}

double positive_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

double integrate_unit_interval(const std::function<double(double)>& f, double k1, int max_depth,
                               double tol, double& abs_error) {
  // Boost's recursion compares an unscaled error with a width-scaled tolerance,
  // so the interval is mapped to [0, 1] first.
  auto g = [&](double s) { return f(k1 * s); };
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, 0.0, 1.0, static_cast<unsigned>(max_depth), tol, &err, &l1);
  abs_error = k1 * err;
  return k1 * v;
}

void validate(const QuadratureConfig& cfg) {
  if (!(cfg.k_max > 0.0)) throw DomainError("k_max must be positive");
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 0.1)) throw DomainError("rel_tol must lie in (0, 0.1)");
  if (cfg.max_subdivisions < 1) throw DomainError("max_subdivisions must be positive");
  if (cfg.eta_ladder.size() < 3) throw DomainError("eta ladder needs at least 3 entries");
  for (std::size_t i = 0; i < cfg.eta_ladder.size(); ++i) {
    if (!(cfg.eta_ladder[i] > 0.0)) throw DomainError("eta ladder entries must be positive");
    if (i > 0 && !(cfg.eta_ladder[i] < cfg.eta_ladder[i - 1])) {
      throw DomainError("eta ladder must be strictly decreasing");
    }
  }
}

OscResult damped_tail(double nu, const std::function<cplx(double)>& a, double k1,
                      const QuadratureConfig& cfg, double k_limit) {
  if (nu == 0.0 || !std::isfinite(nu)) {
    throw ConvergenceError("oscillatory tail without oscillation (light cone)", 0.0, 0.0);
  }
  if (nu < 0.0) {
    const OscResult r = damped_tail(-nu, [&a](double k) { return std::conj(a(k)); }, k1, cfg,
                                    k_limit);
    return {std::conj(r.value), r.abs_error};
  }

  const std::size_t levels = cfg.eta_ladder.size();
  std::vector<double> eta(levels);
  for (std::size_t j = 0; j < levels; ++j) eta[j] = cfg.eta_ladder[j] * nu;
  const double k_end = k1 + kDecayLengths / eta.back();
  if (k_end > k_limit) {
    throw ConvergenceError("damped tail exceeds the wave-number cutoff", k_end, k_limit);
  }

  const PanelRule& rule = panel_rule();
  const double period = std::numbers::pi / nu;
  std::vector<cplx> sums(levels, cplx{0.0});
  double lo = k1;
  while (lo < k_end) {
    const double width = std::min({period, std::max(lo, period * 1e-3), k_end - lo});
    const double half = 0.5 * width;
    const double mid = lo + half;
    for (int q = 0; q < kPanelPoints; ++q) {
      const double k = mid + half * rule.x[q];
      const cplx f = half * rule.w[q] * std::polar(1.0, nu * k) * a(k);
      for (std::size_t j = 0; j < levels; ++j) sums[j] += f * std::exp(-eta[j] * (k - k1));
    }
    lo += width;
  }

  const std::vector<cplx> diag = extrapolate_to_zero(eta, sums);
  const cplx best = diag.back();
  const cplx prev = diag[diag.size() - 2];
  return {best, std::abs(best - prev)};
}

cplx sinc_moment_phase_part(int n, double b) {
  if (b == 0.0) throw DomainError("phase part of the sinc moment is singular at b = 0");
  const cplx ib = I1 * b;
  cplx pn = 1.0 / ib;
  for (int j = 1; j <= n; ++j) pn = 1.0 / ib - (double(j) / ib) * pn;
  return pn;
}

cplx sinc_moment(int n, double b) {
  if (n < 0) throw DomainError("sinc moment order must be non-negative");
  if (std::abs(b) <= 2.0) {
    // sum_j (ib)^j / (j! (n + j + 1)); keeps relative accuracy of Im m_n as b -> 0
    cplx term{1.0};
    cplx sum = 1.0 / double(n + 1);
    for (int j = 1; j < 60; ++j) {
      term *= I1 * b / double(j);
      sum += term / double(n + j + 1);
      if (std::abs(term) <= 1e-17 * std::abs(b)) break;
    }
    return sum;
  }
  if (std::abs(b) <= 12.0) {
    // entire integrand; the 20-point rule is exact to ~1e-17 here, and the
    // closed form below would cancel badly
    const PanelRule& rule = panel_rule();
    cplx sum{0.0};
    for (int q = 0; q < kPanelPoints; ++q) {
      const double mu = 0.5 * (1.0 + rule.x[q]);
      sum += 0.5 * rule.w[q] * std::pow(mu, n) * std::polar(1.0, b * mu);
    }
    return sum;
  }
  const cplx ib = I1 * b;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return std::polar(1.0, b) * sinc_moment_phase_part(n, b) -
         sign * positive_factorial(n) / std::pow(ib, n + 1);
}

double sinc_deriv(int n, double b) { return std::real(std::pow(I1, n) * sinc_moment(n, b)); }

KernelEval oscillatory_k_deriv(double r, int n, const AtomParams& p, const QuadratureConfig& cfg) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (n < 0 || n > kMaxKernelOrder) throw DomainError("derivative order out of range");
  validate(cfg);

  const double k1 = 1.0 / r;
  const double c = p.c;
  const double w0 = p.omega0;

  auto head_f = [&](double k) {
    return std::pow(2.0 * k, n) * sinc_deriv(n, 2.0 * k * r) / (k * c + w0);
  };
  double head_err = 0.0;
  const double head = integrate_unit_interval(head_f, k1, cfg.max_subdivisions, 1e-13, head_err);

  const cplx in = std::pow(I1, n);
  auto tail_a = [&](double k) {
    return in * std::pow(2.0 * k, n) * sinc_moment_phase_part(n, 2.0 * k * r) / (k * c + w0);
  };
  const OscResult tail = damped_tail(2.0 * r, tail_a, k1, cfg, cfg.k_max * w0 / c);

  const double value = head + tail.value.real();
  const double err = head_err + tail.abs_error;
  if (err > cfg.rel_tol * std::max(std::abs(value), std::abs(head))) {
    throw ConvergenceError("k-integral extrapolation did not reach rel_tol", value, value + err);
  }
  return {value, err};
}

KernelEval oscillatory_k_integral(double r, const AtomParams& p, const QuadratureConfig& cfg) {
  return oscillatory_k_deriv(r, 0, p, cfg);
}

}  // namespace casimir
