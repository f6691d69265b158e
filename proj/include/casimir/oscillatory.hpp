#pragma once

// Conditionally convergent (or Abel-summable) k-integrals with an oscillating
// factor exp(i nu k). The tail is damped by exp(-eta (k - k1)) for a ladder of
// eta values and the results are extrapolated polynomially to eta = 0.

#include <functional>
#include <vector>

#include "casimir/core_model.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

struct QuadratureConfig {
  /// Hard wave-number cutoff in units of omega0/c. The damped tail must end below it.
  double k_max = 1e9;
  /// Damping ladder. Each entry is multiplied by the oscillation frequency |nu|.
  std::vector<double> eta_ladder = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  double rel_tol = 1e-6;
  /// Maximum bisection depth of the adaptive head quadrature.
  int max_subdivisions = 18;
};

/// Throws DomainError unless the ladder is strictly decreasing with >= 3
/// entries, rel_tol is in (0, 0.1) and the other fields are positive.
void validate(const QuadratureConfig& cfg);

struct OscResult {
  cplx value;
  double abs_error;
};

/// int_{k1}^inf exp(i nu k) a(k) dk in the Abel sense. `k_limit` is the
/// absolute cutoff; ConvergenceError if the damped tail would need more, if
/// nu == 0 or if the extrapolants disagree by more than rel_tol.
OscResult damped_tail(double nu, const std::function<cplx(double)>& a, double k1,
                      const QuadratureConfig& cfg, double k_limit);

/// int_0^k1 f(k) dk by adaptive Gauss-Kronrod.
double integrate_unit_interval(const std::function<double(double)>& f, double k1, int max_depth,
                               double tol, double& abs_error);

/// m_n(b) = int_0^1 mu^n exp(i b mu) dmu.
cplx sinc_moment(int n, double b);

/// P_n(b) with m_n(b) = exp(ib) P_n(b) - (-1)^n n! / (ib)^(n+1), b != 0.
cplx sinc_moment_phase_part(int n, double b);

/// d^n/db^n [sin(b)/b] = Re[i^n m_n(b)].
double sinc_deriv(int n, double b);

/// int_0^inf dk sin(2kr) / (2kr (kc + omega0)) by damped quadrature.
KernelEval oscillatory_k_integral(double r, const AtomParams& p, const QuadratureConfig& cfg);

/// d^n/dr^n of the same integral, differentiated under the integral sign and
/// summed in the Abel sense. The tail amplitude grows like k^(n-2), so from
/// n = 5 on the default rel_tol is usually out of reach (ConvergenceError).
KernelEval oscillatory_k_deriv(double r, int n, const AtomParams& p,
                               const QuadratureConfig& cfg);

}  // namespace casimir
