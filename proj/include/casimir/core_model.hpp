#pragma once

// Physical parameters and conducting-wall mode functions.
//
// Units: hbar = 1, the speed of light c is configurable. With c = 1 a light
// round trip to the wall and back takes 2R time units.

#include <array>
#include <complex>
#include <limits>
#include <vector>

namespace casimir {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

inline constexpr double kAtomicSpeedOfLight = 137.035999084;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class UnitSystem { LightUnits, Atomic };

/// Two-level atom parameters. The dipole coupling is stored as the product
/// g2 = g^2 p_z^2 with pz2 fixed to one; the Thomas-Reiche-Kuhn rule ties
/// lambda2 = g2 * pz2 / omega0 = pi * alpha0 * omega0^2.
struct AtomParams {
  double omega0;
  double alpha0;
  double pz2;
  double g2;
  double lambda2;
  double c;
};

/// Builds a consistent AtomParams. Throws DomainError for non-positive input.
AtomParams make_atom_params(double omega0, double alpha0, double c = 1.0);

/// Same as make_atom_params but with g2 and lambda2 scaled by `coupling_scale`
/// (weak-coupling oracles). The TRK relation still holds.
AtomParams scaled_couplings(const AtomParams& p, double coupling_scale);

double speed_of_light(UnitSystem units);

struct Kinematics {
  double r;
  double v;
  double r0;
};

/// r > 0, r0 > 0 or +inf, |v|/c < 0.5.
Kinematics make_kinematics(double r, double v, double r0, const AtomParams& p);

enum class Polarization { TE, TM };

/// Half-space wave vector: theta in [0, pi/2] measured from the wall normal.
struct WaveVector {
  double k;
  double theta;
  double phi;
  Polarization polarization;

  double kz() const;
  double k_par() const;
  Vec3 k_vec() const;
};

WaveVector make_wave_vector(double k, double theta, double phi, Polarization pol);

/// A truncated set of field modes in a box of side L.
struct ModeGrid {
  std::vector<double> k_values;
  double box_side;
  int excited_states = 1;
  std::vector<WaveVector> modes;
};

/// One entry per (k, direction, polarization). Directions are (theta, phi).
ModeGrid make_mode_grid(std::vector<double> k_values, double box_side,
                        const std::vector<std::array<double, 2>>& directions,
                        const std::vector<Polarization>& polarizations = {Polarization::TE,
                                                                          Polarization::TM});

/// TE/TM mode function u_k(X) for a perfectly conducting plane at z = 0.
CVec3 mode_function(const WaveVector& wv, const Vec2& x_par, double z, double box_side);

/// Sum_i a_i b_i (no conjugation).
cplx dot(const CVec3& a, const CVec3& b);
CVec3 conj(const CVec3& a);

}  // namespace casimir
