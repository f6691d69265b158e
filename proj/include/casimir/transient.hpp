#pragma once

// Retardation force on a stationary atom after the atom and the field vacuum
// are coupled at tau = 0 (factorized initial state). The force swings at the
// light round trip tau = 2r/c and rings down to the steady state.

#include <vector>

#include "casimir/core_model.hpp"
#include "casimir/oscillatory.hpp"
#include "casimir/steady_state.hpp"

namespace casimir {

struct TransientSample {
  double tau;
  double f_z;
  double abs_error;
};

struct TransientCurve {
  std::vector<TransientSample> samples;
};

/// Time and angle integrals are done in closed form; the remaining k-integral
///   F = -(2 alpha0 omega0^2 / (pi c)) int dk k^2 [ (kc/W) Im m3(2rk)
///                                             + (omega0/W) Im(exp(-i W tau) m3(2rk)) ],
/// W = kc + omega0, m3(b) = int_0^1 mu^3 exp(i b mu) dmu, is split at k = 1/r.
/// The head is adaptive Gauss-Kronrod; the tail is three damped oscillatory
/// pieces with frequencies 2r, 2r - c tau and c tau.
/// Throws ConvergenceError exactly on the light cone c tau = 2r.
ForceValue transient_force(double r, double tau, const AtomParams& p, const QuadratureConfig& cfg);

/// tau_grid must be strictly increasing and non-negative.
TransientCurve transient_sweep(double r, const std::vector<double>& tau_grid, const AtomParams& p,
                               const QuadratureConfig& cfg);

struct SnapshotRow {
  double r;
  /// r^4 (transient retardation + electrostatic)
  double coeff_total;
  /// r^4 transient retardation only
  double coeff_retardation;
  double abs_error;
};

std::vector<SnapshotRow> snapshot_sweep(double tau, const std::vector<double>& r_grid,
                                        const AtomParams& p, const QuadratureConfig& cfg);

/// Index of the largest |f_i - reference_i|.
std::size_t peak_deviation_index(const std::vector<double>& values,
                                 const std::vector<double>& reference);

}  // namespace casimir
