#include "casimir/steady_state.hpp"

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

constexpr double kEps = 2.3e-16;

void require_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("r must be a finite positive number");
}

double x_prefactor(const AtomParams& p) {
  return p.alpha0 * p.omega0 * p.omega0 / (8.0 * std::numbers::pi);
}

}  // namespace

Regime classify_regime(double r, const AtomParams& p) {
  const double x = r * p.omega0 / p.c;
  if (x < 0.1) return Regime::Near;
  if (x > 10.0) return Regime::Far;
  return Regime::Intermediate;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Near:
      return "near";
    case Regime::Far:
      return "far";
    default:
      return "intermediate";
  }
}

ForceValue electrostatic_force(double r, const AtomParams& p) {
  require_r(r);
  const double r2 = r * r;
  return {-3.0 * p.alpha0 * p.omega0 / (8.0 * r2 * r2), 0.0, classify_regime(r, p)};
}

ForceValue stationary_retardation_force(double r, const AtomParams& p) {
  require_r(r);
  const KernelEval k3 = kernel_deriv(r, 3, p);
  const double total = x_prefactor(p) * k3.value;
  const double elec = electrostatic_force(r, p).f_z;
  const double f = total - elec;
  const double err = x_prefactor(p) * k3.abs_error_estimate + kEps * (std::abs(total) + std::abs(elec));
  return {f, err, classify_regime(r, p)};
}

ForceValue stationary_retardation_force_kform(double r, const AtomParams& p,
                                              const QuadratureConfig& cfg) {
  require_r(r);
  const KernelEval k3 = oscillatory_k_deriv(r, 3, p, cfg);
  const double pre = 2.0 * x_prefactor(p);
  return {-pre * k3.value, pre * k3.abs_error_estimate, classify_regime(r, p)};
}

ForceValue stationary_total_force(double r, const AtomParams& p) {
  const ForceValue e = electrostatic_force(r, p);
  const ForceValue f = stationary_retardation_force(r, p);
  return {e.f_z + f.f_z, e.abs_error_estimate + f.abs_error_estimate, f.regime};
}

PotentialValue stationary_potential(double r, const AtomParams& p) {
  require_r(r);
  const KernelEval k2 = kernel_deriv(r, 2, p);
  return {-x_prefactor(p) * k2.value, x_prefactor(p) * k2.abs_error_estimate};
}

ForceValue stationary_potential_gradient_force(double r, const AtomParams& p) {
  require_r(r);
  const KernelEval k3 = kernel_deriv(r, 3, p);
  return {x_prefactor(p) * k3.value, x_prefactor(p) * k3.abs_error_estimate,
          classify_regime(r, p)};
}

std::vector<double> retardation_force_derivs(double r, int nmax, const AtomParams& p) {
  require_r(r);
  if (nmax < 0 || nmax + 3 > kMaxKernelOrder) throw DomainError("force derivative order out of range");
  const std::vector<KernelEval> k = kernel_derivs(r, nmax + 3, p);
  std::vector<double> out(nmax + 1);
  // electrostatic part 3 alpha0 omega0 / 8 * d^n r^-4 is removed
  double inv = 3.0 * p.alpha0 * p.omega0 / (8.0 * r * r * r * r);
  for (int n = 0; n <= nmax; ++n) {
    out[n] = x_prefactor(p) * k[n + 3].value + inv;
    inv *= -(n + 4) / r;
  }
  return out;
}

}  // namespace casimir
