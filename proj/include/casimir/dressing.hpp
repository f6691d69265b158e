#pragma once

// First-principles oracles on a truncated mode grid: the step-by-step
// recursion for the effective-action coefficients A, B, C of the dressing
// propagator, its O(g^2) closed form, and the momentum expectation obtained
// from the moment generating function Z(J).
//
// Conventions: single excited level, dipole p_eg = p_ge = z_hat, real coupling
// g = -sqrt(g2), omega_k = c k.

#include <vector>

#include "casimir/core_model.hpp"

namespace casimir {

struct PropagatorState {
  cplx a{0.0};
  std::vector<cplx> b;
  /// Row-major modes x modes.
  std::vector<cplx> c_mat;
  int step_count = 0;
  double epsilon = 0.0;

  cplx c(std::size_t k, std::size_t l) const { return c_mat[k * b.size() + l]; }
};

PropagatorState initial_state(const ModeGrid& grid, double epsilon);

/// Straight line X(s) = x0 + (xf - x0)(s - t)/tau.
struct PathSpec {
  Vec3 x0;
  Vec3 xf;
  double t;
  double tau;

  Vec3 position(double s) const;
};

PathSpec make_path(const Vec3& x0, const Vec3& xf, double t, double tau);

/// One step of the finite-difference equations for A, B, C, with mode functions
/// evaluated at X(t + (step_count + 1) epsilon). Throws std::overflow_error on
/// non-finite coefficients.
PropagatorState step_recursion(const PropagatorState& state, const PathSpec& path,
                               const ModeGrid& grid, const AtomParams& p);

/// Runs `steps` steps with epsilon = tau / steps from the factorized state.
PropagatorState run_recursion(const PathSpec& path, const ModeGrid& grid, const AtomParams& p,
                              int steps);

/// int_0^tau ds int_0^s dr exp(i a s + i b r), exact for real a, b.
cplx ordered_exp_integral(double a, double b, double tau);

/// int_0^tau ds int_0^s dr exp(-i W (s - r)) = -i tau / W + (1 - exp(-i W tau)) / W^2.
cplx stationary_double_integral(double w, double tau);

/// O(g^2) vertex closed form of A(t + tau) on the grid, time integrals exact.
cplx second_order_A(const PathSpec& path, const ModeGrid& grid, const AtomParams& p);

/// P(t + tau) - P0 for an atom starting at distance r with velocity `velocity`
/// (z component normal to the wall). Only the z component is non-zero and only
/// velocity[2] enters.
Vec3 momentum_expectation(double r, const Vec3& velocity, double tau, const ModeGrid& grid,
                          const AtomParams& p);
Vec3 momentum_expectation(double r, double v, double tau, const ModeGrid& grid,
                          const AtomParams& p);

/// d/dtau of the z momentum, as the mode sum with the remaining time integral exact.
double truncated_force(double r, double v, double tau, const ModeGrid& grid, const AtomParams& p);

/// Z(J) in the heavy-atom, sharp-wavepacket limit without the -J^2/(4 sigma^2)
/// and i J.P0 terms (they do not enter P - P0).
cplx generating_function_check(double r, const Vec3& velocity, double tau, const ModeGrid& grid,
                               const AtomParams& p, const Vec3& j);

/// (1/i) d/dJ_z log Z at J = 0 by Richardson-extrapolated central differences.
double momentum_from_generating_function(double r, const Vec3& velocity, double tau,
                                         const ModeGrid& grid, const AtomParams& p);

}  // namespace casimir
