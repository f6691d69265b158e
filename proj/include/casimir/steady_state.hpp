#pragma once

// Force and potential on an atom held at rest a distance r from the wall.
// Sign convention: positive f_z points away from the wall.

#include "casimir/core_model.hpp"
#include "casimir/oscillatory.hpp"

namespace casimir {

enum class Regime { Near, Intermediate, Far };

/// r omega0 / c below 0.1 is near, above 10 is far. Labels only.
Regime classify_regime(double r, const AtomParams& p);
const char* regime_name(Regime r);

struct ForceValue {
  double f_z;
  double abs_error_estimate;
  Regime regime;
};

struct PotentialValue {
  double u;
  double abs_error_estimate;
};

/// Image-dipole term -3 alpha0 omega0 / (8 r^4).
ForceValue electrostatic_force(double r, const AtomParams& p);

/// Transverse-field (retardation) part F0(r) = -(alpha0 omega0^2 / 4 pi) K'''(r),
/// evaluated through the Laplace kernel.
ForceValue stationary_retardation_force(double r, const AtomParams& p);

/// Same quantity from the oscillatory k-integral. Slower; used as a cross-check.
ForceValue stationary_retardation_force_kform(double r, const AtomParams& p,
                                              const QuadratureConfig& cfg);

/// electrostatic + retardation, which equals (alpha0 omega0^2 / 8 pi) d^3/dr^3 [I(r)/r].
ForceValue stationary_total_force(double r, const AtomParams& p);

/// U(r) = -(alpha0 omega0^2 / 8 pi) d^2/dr^2 [I(r)/r]. This is the full
/// potential: it tends to -alpha0 omega0 / (8 r^3) close to the wall.
PotentialValue stationary_potential(double r, const AtomParams& p);

/// -dU/dr taken analytically (one more kernel derivative).
ForceValue stationary_potential_gradient_force(double r, const AtomParams& p);

/// d^n/dr^n F0(r) for n = 0 .. kMaxKernelOrder - 3, all in one pass.
std::vector<double> retardation_force_derivs(double r, int nmax, const AtomParams& p);

}  // namespace casimir
