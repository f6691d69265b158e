#include "casimir/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "casimir/errors.hpp"
#include "casimir/oscillatory.hpp"

namespace casimir {

namespace {

const cplx I1{0.0, 1.0};

void require_grid(const ModeGrid& grid) {
  if (grid.modes.empty()) throw DomainError("mode grid is empty");
  if (!(grid.box_side > 0.0)) throw DomainError("box side must be positive");
}

double coupling_g(const AtomParams& p) { return -std::sqrt(p.g2); }

// u(X0 + V s) = sum_j coef_j exp(i w_j s) along a straight path.
struct ExpTerm {
  CVec3 coef;
  double w;
};

std::array<ExpTerm, 2> mode_on_path(const WaveVector& wv, const Vec3& x0, const Vec3& v,
                                    double box_side) {
  const double norm = std::sqrt(2.0 / (box_side * box_side * box_side));
  const double kz = wv.kz();
  const double kp = wv.k_par();
  const double kx = kp * std::cos(wv.phi);
  const double ky = kp * std::sin(wv.phi);
  // u = phase * (sin(kz z) s_vec + cos(kz z) c_vec)
  CVec3 s_vec{};
  CVec3 c_vec{};
  if (wv.polarization == Polarization::TE) {
    s_vec = {norm * std::sin(wv.phi), -norm * std::cos(wv.phi), 0.0};
  } else {
    s_vec = {-I1 * norm * (kz / wv.k) * std::cos(wv.phi),
             -I1 * norm * (kz / wv.k) * std::sin(wv.phi), 0.0};
    c_vec = {0.0, 0.0, norm * kp / wv.k};
  }
  const double w_par = kx * v[0] + ky * v[1];
  const double ph_par = kx * x0[0] + ky * x0[1];
  std::array<ExpTerm, 2> out{};
  for (int sgn : {1, -1}) {
    const cplx phase = std::polar(1.0, ph_par + sgn * kz * x0[2]);
    ExpTerm& t = out[sgn > 0 ? 0 : 1];
    for (int i = 0; i < 3; ++i) {
      t.coef[i] = phase * (double(sgn) * s_vec[i] / (2.0 * I1) + c_vec[i] / 2.0);
    }
    t.w = w_par + sgn * kz * v[2];
  }
  return out;
}

// Distinct (k, theta, phi); polarization sums are already done in the
// momentum formulas.
std::vector<WaveVector> distinct_wave_vectors(const ModeGrid& grid) {
  std::vector<WaveVector> out;
  for (const WaveVector& m : grid.modes) {
    bool seen = false;
    for (const WaveVector& o : out) {
      if (o.k == m.k && o.theta == m.theta && o.phi == m.phi) seen = true;
    }
    if (!seen) out.push_back(m);
  }
  return out;
}

void require_momentum_args(double r, double tau, const ModeGrid& grid) {
  if (!(r > 0.0)) throw DomainError("r must be positive");
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  require_grid(grid);
}

cplx log_generating_function(double r, const Vec3& vel, double tau, const ModeGrid& grid,
                             const AtomParams& p, double jz) {
  const double l3 = std::pow(grid.box_side, 3);
  const double w0 = p.omega0;
  cplx sum{0.0};
  for (const WaveVector& wv : distinct_wave_vectors(grid)) {
    const double om = p.c * wv.k;
    const double big = om + w0;
    const double kz = wv.kz();
    const double cos2 = std::cos(wv.theta) * std::cos(wv.theta);
    const Vec3 kv = wv.k_vec();
    const double k_dot_v = kv[0] * vel[0] + kv[1] * vel[1] + kv[2] * vel[2];
    const double kpar_v = k_dot_v - kz * vel[2];
    const cplx jphase = std::polar(1.0, kz * jz);
    const cplx wall = std::polar(1.0, 2.0 * kz * r);

    const double s1 = (wall * tau * sinc_moment(0, 2.0 * kz * vel[2] * tau)).imag();
    sum += (I1 * p.lambda2 / l3) * (cos2 / om) * jphase * (2.0 * I1 * s1);

    const cplx self = ordered_exp_integral(-big + k_dot_v, big - k_dot_v, tau);
    sum -= (p.g2 / l3) / om * 2.0 * self.real();

    const cplx refl =
        wall * ordered_exp_integral(-big + kz * vel[2] + kpar_v, big + kz * vel[2] - kpar_v, tau);
    sum += (p.g2 / l3) * (cos2 / om) * jphase * 2.0 * refl.real();
  }
  return sum;
}

}  // namespace

Vec3 PathSpec::position(double s) const {
  const double x = (s - t) / tau;
  return {x0[0] + (xf[0] - x0[0]) * x, x0[1] + (xf[1] - x0[1]) * x, x0[2] + (xf[2] - x0[2]) * x};
}

PathSpec make_path(const Vec3& x0, const Vec3& xf, double t, double tau) {
  if (!(tau > 0.0)) throw DomainError("path duration must be positive");
  if (x0[2] < 0.0 || xf[2] < 0.0) throw DomainError("path must stay on the z >= 0 side");
  return {x0, xf, t, tau};
}

PropagatorState initial_state(const ModeGrid& grid, double epsilon) {
  require_grid(grid);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  const std::size_t n = grid.modes.size();
  PropagatorState s;
  s.b.assign(n, cplx{0.0});
  s.c_mat.assign(n * n, cplx{0.0});
  s.epsilon = epsilon;
  return s;
}

PropagatorState step_recursion(const PropagatorState& state, const PathSpec& path,
                               const ModeGrid& grid, const AtomParams& p) {
  require_grid(grid);
  const std::size_t n = grid.modes.size();
  if (state.b.size() != n || state.c_mat.size() != n * n) {
    throw DomainError("propagator state does not match the mode grid");
  }
  const double eps = state.epsilon;
  const cplx ie = I1 * eps;
  const double g = coupling_g(p);
  const double gb = g;
  const double lam2 = p.lambda2;
  const double w0 = p.omega0;

  const Vec3 x = path.position(path.t + (state.step_count + 1) * eps);
  std::vector<CVec3> u(n);
  std::vector<CVec3> us(n);
  std::vector<double> om(n);
  std::vector<double> sv(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = mode_function(grid.modes[k], {x[0], x[1]}, x[2], grid.box_side);
    us[k] = conj(u[k]);
    om[k] = p.c * grid.modes[k].k;
    sv[k] = 1.0 / std::sqrt(om[k]);
  }
  // m[k][l] = u_k^dag . u_l, ns[k][l] = u_k^dag . u_l^dag
  std::vector<cplx> m(n * n);
  std::vector<cplx> ns(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      m[k * n + l] = dot(us[k], u[l]);
      ns[k * n + l] = dot(us[k], us[l]);
    }
  }
  const auto& b = state.b;
  auto c = [&](std::size_t k, std::size_t l) { return state.c_mat[k * n + l]; };

  cplx gsum{0.0};
  for (std::size_t l = 0; l < n; ++l) gsum += gb * sv[l] * u[l][2] * b[l];
  std::vector<cplx> h(n, cplx{0.0});
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t q = 0; q < n; ++q) h[l] += gb * sv[q] * u[q][2] * c(l, q);
  }

  PropagatorState next = state;
  next.step_count = state.step_count + 1;

  cplx da{0.0};
  for (std::size_t k = 0; k < n; ++k) da += lam2 / om[k] * m[k * n + k];
  next.a = state.a - ie * da - ie * gsum;

  for (std::size_t k = 0; k < n; ++k) {
    cplx mix{0.0};
    cplx pair{0.0};
    for (std::size_t l = 0; l < n; ++l) {
      mix += 2.0 * lam2 * sv[k] * sv[l] * m[k * n + l] * b[l];
      pair += 2.0 * g * sv[l] * u[l][2] * c(k, l);
    }
    next.b[k] = (1.0 - ie * (w0 + om[k])) * b[k] - ie * g * sv[k] * us[k][2] + ie * gsum * b[k] -
                ie * mix - ie * pair;
  }

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      cplx mix{0.0};
      for (std::size_t q = 0; q < n; ++q) {
        mix += 2.0 * lam2 * sv[q] * sv[l] * m[l * n + q] * c(k, q);
        mix += 2.0 * lam2 * sv[q] * sv[k] * m[k * n + q] * c(q, l);
      }
      next.c_mat[k * n + l] = (1.0 - ie * (om[k] + om[l])) * c(k, l) -
                              ie * lam2 * sv[k] * sv[l] * ns[k * n + l] - ie * mix -
                              ie * 2.0 * h[l] * b[k] - ie * gb * sv[l] * us[l][2] * b[k];
    }
  }

  bool finite = std::isfinite(next.a.real()) && std::isfinite(next.a.imag());
  for (const cplx& v : next.b) finite = finite && std::isfinite(std::abs(v));
  for (const cplx& v : next.c_mat) finite = finite && std::isfinite(std::abs(v));
  if (!finite) throw std::overflow_error("dressing recursion produced non-finite coefficients");
  return next;
}

PropagatorState run_recursion(const PathSpec& path, const ModeGrid& grid, const AtomParams& p,
                              int steps) {
  if (steps < 1) throw DomainError("need at least one step");
  PropagatorState s = initial_state(grid, path.tau / steps);
  for (int i = 0; i < steps; ++i) s = step_recursion(s, path, grid, p);
  return s;
}

cplx ordered_exp_integral(double a, double b, double tau) {
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  if (tau == 0.0) return 0.0;
  const double x = a * tau;
  const double y = b * tau;
  if (std::abs(y) >= 0.5) {
    return tau * tau * (sinc_moment(0, x + y) - sinc_moment(0, x)) / (I1 * y);
  }
  // sum_m (iy)^m / (m+1)! * int_0^1 u^(m+1) exp(ixu) du
  cplx term{1.0};
  cplx sum{0.0};
  for (int mm = 0; mm < 40; ++mm) {
    if (mm > 0) term *= I1 * y / double(mm + 1);
    const cplx add = term * sinc_moment(mm + 1, x);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return tau * tau * sum;
}

cplx stationary_double_integral(double w, double tau) { return ordered_exp_integral(-w, w, tau); }

cplx second_order_A(const PathSpec& path, const ModeGrid& grid, const AtomParams& p) {
  require_grid(grid);
  const double tau = path.tau;
  const Vec3 v{(path.xf[0] - path.x0[0]) / tau, (path.xf[1] - path.x0[1]) / tau,
               (path.xf[2] - path.x0[2]) / tau};
  cplx a{0.0};
  for (const WaveVector& wv : grid.modes) {
    const double om = p.c * wv.k;
    const double big = om + p.omega0;
    const auto terms = mode_on_path(wv, path.x0, v, grid.box_side);
    for (const ExpTerm& tj : terms) {
      for (const ExpTerm& tl : terms) {
        const cplx uu = dot(conj(tj.coef), tl.coef);
        a += -I1 * (p.lambda2 / om) * uu * tau * sinc_moment(0, (tl.w - tj.w) * tau);
        const cplx zz = tj.coef[2] * std::conj(tl.coef[2]);
        a -= (p.g2 / om) * zz * ordered_exp_integral(tj.w - big, big - tl.w, tau);
      }
    }
  }
  return a;
}

Vec3 momentum_expectation(double r, const Vec3& velocity, double tau, const ModeGrid& grid,
                          const AtomParams& p) {
  require_momentum_args(r, tau, grid);
  const double l3 = std::pow(grid.box_side, 3);
  const double vz = velocity[2];
  double pz = 0.0;
  for (const WaveVector& wv : distinct_wave_vectors(grid)) {
    const double om = p.c * wv.k;
    const double big = om + p.omega0;
    const double kz = wv.kz();
    const double w = kz * std::cos(wv.theta) * std::cos(wv.theta) / om;
    const cplx wall = std::polar(1.0, 2.0 * kz * r);
    const double s1 = (wall * tau * sinc_moment(0, 2.0 * kz * vz * tau)).imag();
    const double s2 = (wall * ordered_exp_integral(kz * vz - big, big + kz * vz, tau)).real();
    pz += -2.0 * p.lambda2 / l3 * w * s1 + 2.0 * p.g2 / l3 * w * s2;
  }
  return {0.0, 0.0, pz};
}

Vec3 momentum_expectation(double r, double v, double tau, const ModeGrid& grid,
                          const AtomParams& p) {
  return momentum_expectation(r, Vec3{0.0, 0.0, v}, tau, grid, p);
}

double truncated_force(double r, double v, double tau, const ModeGrid& grid, const AtomParams& p) {
  require_momentum_args(r, tau, grid);
  const double l3 = std::pow(grid.box_side, 3);
  double f = 0.0;
  for (const WaveVector& wv : distinct_wave_vectors(grid)) {
    const double om = p.c * wv.k;
    const double big = om + p.omega0;
    const double kz = wv.kz();
    const double w = kz * std::cos(wv.theta) * std::cos(wv.theta) / om;
    const double a = kz * v - big;
    const double b = big + kz * v;
    const double inner =
        (std::polar(1.0, 2.0 * kz * r + a * tau) * tau * sinc_moment(0, b * tau)).real();
    f += -2.0 * p.lambda2 / l3 * w * std::sin(2.0 * kz * (r + v * tau)) +
         2.0 * p.g2 / l3 * w * inner;
  }
  return f;
}

cplx generating_function_check(double r, const Vec3& velocity, double tau, const ModeGrid& grid,
                               const AtomParams& p, const Vec3& j) {
  require_momentum_args(r, tau, grid);
  return std::exp(log_generating_function(r, velocity, tau, grid, p, j[2]));
}

double momentum_from_generating_function(double r, const Vec3& velocity, double tau,
                                         const ModeGrid& grid, const AtomParams& p) {
  require_momentum_args(r, tau, grid);
  double kmax = 0.0;
  for (const WaveVector& wv : grid.modes) kmax = std::max(kmax, wv.k);
  const double h = 1e-2 / kmax;
  auto diff = [&](double step) {
    const cplx up = log_generating_function(r, velocity, tau, grid, p, step);
    const cplx dn = log_generating_function(r, velocity, tau, grid, p, -step);
    return ((up - dn) / (2.0 * step) / I1).real();
  };
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace casimir
