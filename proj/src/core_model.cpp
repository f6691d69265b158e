#include "casimir/core_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be a finite positive number");
  }
}

}  // namespace

AtomParams make_atom_params(double omega0, double alpha0, double c) {
  require_positive(omega0, "omega0");
  require_positive(alpha0, "alpha0");
  require_positive(c, "c");
  AtomParams p{};
  p.omega0 = omega0;
  p.alpha0 = alpha0;
  p.c = c;
  p.pz2 = 1.0;
  p.lambda2 = std::numbers::pi * alpha0 * omega0 * omega0;
  p.g2 = p.lambda2 * omega0 / p.pz2;
  return p;
}

AtomParams scaled_couplings(const AtomParams& p, double coupling_scale) {
  if (!(coupling_scale >= 0.0)) throw DomainError("coupling scale must be non-negative");
  AtomParams q = p;
  q.g2 *= coupling_scale;
  q.lambda2 *= coupling_scale;
  return q;
}

double speed_of_light(UnitSystem units) {
  return units == UnitSystem::Atomic ? kAtomicSpeedOfLight : 1.0;
}

Kinematics make_kinematics(double r, double v, double r0, const AtomParams& p) {
  require_positive(r, "r");
  if (!(r0 > 0.0)) throw DomainError("r0 must be positive or +inf");
  if (!std::isfinite(v) || std::abs(v) / p.c >= 0.5) {
    throw DomainError("|v|/c must be below 0.5 for adiabatic motion");
  }
  return {r, v, r0};
}

double WaveVector::kz() const { return k * std::cos(theta); }
double WaveVector::k_par() const { return k * std::sin(theta); }

Vec3 WaveVector::k_vec() const {
  const double kp = k_par();
  return {kp * std::cos(phi), kp * std::sin(phi), kz()};
}

WaveVector make_wave_vector(double k, double theta, double phi, Polarization pol) {
  require_positive(k, "k");
  if (theta < 0.0 || theta > std::numbers::pi / 2 + 1e-15) {
    throw DomainError("theta must lie in [0, pi/2]");
  }
  return {k, theta, phi, pol};
}

ModeGrid make_mode_grid(std::vector<double> k_values, double box_side,
                        const std::vector<std::array<double, 2>>& directions,
                        const std::vector<Polarization>& polarizations) {
  require_positive(box_side, "box_side");
  if (k_values.empty()) throw DomainError("mode grid needs at least one k value");
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    require_positive(k_values[i], "k");
    if (i > 0 && !(k_values[i] > k_values[i - 1])) {
      throw DomainError("k values must be strictly increasing");
    }
  }
  ModeGrid grid;
  grid.box_side = box_side;
  for (double k : k_values) {
    for (const auto& d : directions) {
      for (Polarization pol : polarizations) {
        grid.modes.push_back(make_wave_vector(k, d[0], d[1], pol));
      }
    }
  }
  grid.k_values = std::move(k_values);
  return grid;
}

CVec3 mode_function(const WaveVector& wv, const Vec2& x_par, double z, double box_side) {
  if (z < 0.0) throw DomainError("mode functions are defined for z >= 0 only");
  require_positive(box_side, "box_side");

  const double norm = std::sqrt(2.0 / (box_side * box_side * box_side));
  const Vec3 kv = wv.k_vec();
  const cplx phase = std::polar(1.0, kv[0] * x_par[0] + kv[1] * x_par[1]);
  const double kz = wv.kz();
  const double cp = std::cos(wv.phi);
  const double sp = std::sin(wv.phi);

  if (wv.polarization == Polarization::TE) {
    // k_par_hat x z_hat
    const cplx a = norm * std::sin(kz * z) * phase;
    return {a * sp, -a * cp, cplx{0.0}};
  }
  const double kp = wv.k_par();
  const cplx tang = cplx{0.0, -1.0} * (kz / wv.k) * std::sin(kz * z) * norm * phase;
  const cplx normal = (kp / wv.k) * std::cos(kz * z) * norm * phase;
  return {tang * cp, tang * sp, normal};
}

cplx dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

CVec3 conj(const CVec3& a) { return {std::conj(a[0]), std::conj(a[1]), std::conj(a[2])}; }

}  // namespace casimir
