#pragma once

// Retardation force on an atom that moves slowly after being released from
// rest at r0: F_c(r) = 2 F0(r) - F0(r0), with F0 the stationary retardation force.

#include <iosfwd>
#include <string>
#include <vector>

#include "casimir/core_model.hpp"
#include "casimir/oscillatory.hpp"
#include "casimir/steady_state.hpp"

namespace casimir {

struct TrajectorySample {
  double t;
  double r;
  double v;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool monotone = false;

  double r_start() const { return samples.front().r; }
  double r_end() const { return samples.back().r; }
};

/// Validates and wraps samples. Requirements: at least 3 samples, t strictly
/// increasing, r > 0, v = 0 at the first sample, and central differences of r
/// matching v to `consistency_tol` times max|v| at interior samples.
/// Throws ValidationError naming the offending sample.
Trajectory make_trajectory(std::vector<TrajectorySample> samples, double consistency_tol = 1e-6);

/// Whitespace separated "t r v" lines, '#' starts a comment.
Trajectory parse_trajectory(std::istream& in, double consistency_tol = 1e-6);
Trajectory load_trajectory(const std::string& path, double consistency_tol = 1e-6);

/// r(t) = r0 + (r1 - r0)(1 - cos(pi t / T)) / 2 on [0, T].
Trajectory cosine_trajectory(double r0, double r1, double duration, int samples);
/// r(t) = r0 + (r1 - r0) x^2 (3 - 2x), x = t / T.
Trajectory smoothstep_trajectory(double r0, double r1, double duration, int samples);

/// 2 F0(r) - F0(r0); r0 may be kInfinity, where F0 vanishes.
ForceValue adiabatic_retardation_force(double r, double r0, const AtomParams& p);

/// stationary total force at r plus the residual F0(r) - F0(r0).
ForceValue adiabatic_total_force(double r, double r0, const AtomParams& p);

/// U(r) = U_stationary(r) + (alpha0 omega0^2 / 4 pi) [K''(r) - K''(r0)],
/// K(r) = int dk sin(2kr) / (2kr (kc + omega0)), K''(inf) = 0.
PotentialValue adiabatic_potential(double r, double r0, const AtomParams& p);

/// -dU/dr of adiabatic_potential, analytic. Independent of r0.
ForceValue adiabatic_potential_gradient_force(double r, double r0, const AtomParams& p);

/// -(tau^n / 2^n)(alpha0 omega0^2 / 4 pi) K^(n+3)(r), 0 <= n <= 2.
double steady_state_expansion_term(int n, double r, double tau, const AtomParams& p);

struct NestedResult {
  double value;
  double abs_error;
};

/// n-fold ordered time integral
///   int ds1 int^{s1} ds2 ... int^{s_{n-1}} ds_n  v(s1)...v(sn) / 2^n  F0^(n)(r(s_n))
/// along the trajectory (cubic Hermite through the samples), 1 <= n <= 3.
/// The exact value is 2^-n [F0(r_end) - sum_{j<n} F0^(j)(r_start) (r_end - r_start)^j / j!].
NestedResult series_term_nested(int n, const Trajectory& traj, const AtomParams& p,
                                const QuadratureConfig& cfg);

/// All orders 1 .. nmax (nmax <= 3) in one pass.
std::vector<NestedResult> series_terms_nested(int nmax, const Trajectory& traj,
                                              const AtomParams& p, const QuadratureConfig& cfg);

struct SeriesSum {
  double value;
  double remainder_bound;
  double abs_error;
};

/// F0(r_end) + sum_{n=1..n_max} of the series terms: nested quadrature for
/// n <= 3, 2^-n [F0(r_end) - F0(r_start)] above. remainder_bound = 2^-n_max |dF|.
SeriesSum series_sum(const Trajectory& traj, int n_max, const AtomParams& p,
                     const QuadratureConfig& cfg);

}  // namespace casimir
