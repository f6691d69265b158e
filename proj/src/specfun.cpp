#include "casimir/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kMomentRelErr = 4e-14;

double switch_point(int m) { return 40.0 + 3.0 * m; }

// h_m(z) ~ sum_j (-1)^j (m+2j)! / z^(m+2j+1), truncated at the smallest term.
double moment_asymptotic(int m, double z) {
  double term = 1.0 / z;
  for (int i = 1; i <= m; ++i) term *= i / z;
  double sum = term;
  double prev = std::abs(term);
  for (int j = 1; j < 200; ++j) {
    const int a = m + 2 * j - 1;
    const double next = -term * a * (a + 1) / (z * z);
    if (std::abs(next) >= prev) break;
    term = next;
    sum += term;
    prev = std::abs(term);
    if (prev < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double moment_quadrature(int m, double z) {
  thread_local boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [m, z](double t) {
    const double e = std::exp(-z * t);
    if (e == 0.0) return 0.0;
    return std::pow(t, m) * e / (1.0 + t * t);
  };
  // Rescaling t = s/z keeps the peak of t^m e^{-zt} near s = m for every z.
  auto g = [&](double s) { return f(s / z) / z; };
  double err = 0.0;
  double l1 = 0.0;
  const double v = integrator.integrate(g, 1e-15, &err, &l1);
  if (!(err <= 1e-10 * std::abs(v))) {
    throw ConvergenceError("auxiliary moment quadrature did not converge", v, v + err);
  }
  return v;
}

void check_order(int n) {
  if (n < 0 || n > kMaxKernelOrder) {
    throw DomainError("kernel derivative order " + std::to_string(n) + " outside 0.." +
                      std::to_string(kMaxKernelOrder));
  }
}

}  // namespace

double aux_moment(int m, double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("auxiliary function needs z > 0");
  if (m < 0 || m > 2 * kMaxKernelOrder) throw DomainError("moment index out of range");
  return z >= switch_point(m) ? moment_asymptotic(m, z) : moment_quadrature(m, z);
}

double auxiliary_f(double z) { return aux_moment(0, z); }

std::vector<double> aux_moments(int mmax, double z) {
  std::vector<double> h(mmax + 1);
  for (int m = 0; m <= mmax; ++m) h[m] = aux_moment(m, z);
  return h;
}

KernelEval laplace_kernel(double r, const AtomParams& p) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  const double v = auxiliary_f(2.0 * r * p.omega0 / p.c) / p.omega0;
  return {v, kMomentRelErr * std::abs(v)};
}

std::vector<KernelEval> kernel_derivs(double r, int nmax, const AtomParams& p) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be positive");
  check_order(nmax);
  const double z = 2.0 * r * p.omega0 / p.c;
  const std::vector<double> h = aux_moments(nmax, z);

  // I^(m)(r) = (-2/c)^m omega0^(m-1) h_m(z)
  std::vector<double> di(nmax + 1);
  double scale = 1.0 / p.omega0;
  for (int m = 0; m <= nmax; ++m) {
    di[m] = scale * h[m];
    scale *= -2.0 * p.omega0 / p.c;
  }
  // d^j (1/r) = (-1)^j j! / r^(j+1)
  std::vector<double> dinv(nmax + 1);
  double t = 1.0 / r;
  for (int j = 0; j <= nmax; ++j) {
    dinv[j] = t;
    t *= -(j + 1) / r;
  }

  std::vector<KernelEval> out(nmax + 1);
  for (int n = 0; n <= nmax; ++n) {
    double sum = 0.0;
    double binom = 1.0;
    for (int m = 0; m <= n; ++m) {
      sum += binom * di[m] * dinv[n - m];
      binom = binom * (n - m) / (m + 1);
    }
    // every term has sign (-1)^n, so relative error does not grow
    out[n] = {sum, kMomentRelErr * std::abs(sum) * (n + 1)};
  }
  return out;
}

KernelEval kernel_deriv(double r, int n, const AtomParams& p) {
  check_order(n);
  return kernel_derivs(r, n, p)[n];
}

std::vector<KernelEval> sinc_kernel_derivs(double r, int nmax, const AtomParams& p) {
  std::vector<KernelEval> d = kernel_derivs(r, nmax, p);
  // d^n (1/r) = (-1)^n n! / r^(n+1)
  double inv = std::numbers::pi / (4.0 * p.omega0 * r);
  for (int n = 0; n <= nmax; ++n) {
    const double v = inv - 0.5 * d[n].value;
    d[n] = {v, 0.5 * d[n].abs_error_estimate + 1e-16 * std::abs(inv)};
    inv *= -(n + 1) / r;
  }
  return d;
}

KernelEval sinc_kernel_deriv(double r, int n, const AtomParams& p) {
  check_order(n);
  return sinc_kernel_derivs(r, n, p)[n];
}

}  // namespace casimir
