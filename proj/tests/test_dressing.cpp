#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

#include "casimir/dressing.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

const cplx I1{0.0, 1.0};

ModeGrid small_grid(double box) {
  return make_mode_grid({1.5}, box, {{0.3, 0.2}, {1.0, 2.0}});
}

// Direct Gauss-Legendre evaluation of the O(g^2) expression with mode functions
// sampled along the path.
cplx brute_second_order(const PathSpec& path, const ModeGrid& grid, const AtomParams& p) {
  using G = boost::math::quadrature::gauss<double, 40>;
  const double g2 = p.g2;
  cplx total{0.0};
  for (const WaveVector& w : grid.modes) {
    const double om = p.c * w.k;
    const double big = om + p.omega0;
    auto u = [&](double s) {
      const Vec3 x = path.position(s);
      return mode_function(w, {x[0], x[1]}, x[2], grid.box_side);
    };
    auto single = [&](double s) {
      const CVec3 v = u(s);
      return -I1 * (p.lambda2 / om) * dot(conj(v), v);
    };
    auto re1 = [&](double s) { return single(s).real(); };
    auto im1 = [&](double s) { return single(s).imag(); };
    total += cplx{G::integrate(re1, path.t, path.t + path.tau),
                  G::integrate(im1, path.t, path.t + path.tau)};
    auto inner = [&](double s) {
      const cplx us = u(s)[2];
      auto fr = [&](double r) {
        return (-(g2 / om) * std::exp(-I1 * big * (s - r)) * us * std::conj(u(r)[2])).real();
      };
      auto fi = [&](double r) {
        return (-(g2 / om) * std::exp(-I1 * big * (s - r)) * us * std::conj(u(r)[2])).imag();
      };
      return cplx{G::integrate(fr, path.t, s), G::integrate(fi, path.t, s)};
    };
    auto re2 = [&](double s) { return inner(s).real(); };
    auto im2 = [&](double s) { return inner(s).imag(); };
    total += cplx{G::integrate(re2, path.t, path.t + path.tau),
                  G::integrate(im2, path.t, path.t + path.tau)};
  }
  return total;
}

}  // namespace

TEST(StepRecursion, FirstStepFromFactorizedState) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = small_grid(3.0);
  const PathSpec path = make_path({0.1, 0.0, 1.0}, {0.3, 0.1, 1.3}, 0.5, 2.0);
  const double eps = 0.01;
  const PropagatorState s = step_recursion(initial_state(grid, eps), path, grid, p);
  EXPECT_EQ(s.step_count, 1);
  const Vec3 x = path.position(0.5 + eps);
  const double g = -std::sqrt(p.g2);
  cplx a{0.0};
  const std::size_t n = grid.modes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double om = grid.modes[k].k;
    const CVec3 uk = mode_function(grid.modes[k], {x[0], x[1]}, x[2], grid.box_side);
    a += -I1 * eps * (p.lambda2 / om) * dot(conj(uk), uk);
    EXPECT_NEAR(std::abs(s.b[k] - (-I1 * eps * g / std::sqrt(om) * std::conj(uk[2]))), 0.0, 1e-17);
    for (std::size_t l = 0; l < n; ++l) {
      const double ol = grid.modes[l].k;
      const CVec3 ul = mode_function(grid.modes[l], {x[0], x[1]}, x[2], grid.box_side);
      const cplx want = -I1 * eps * p.lambda2 / std::sqrt(om * ol) * dot(conj(uk), conj(ul));
      EXPECT_NEAR(std::abs(s.c(k, l) - want), 0.0, 1e-17);
    }
  }
  EXPECT_NEAR(std::abs(s.a - a), 0.0, 1e-17);
}

TEST(StepRecursion, FirstOrderInStepSize) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = small_grid(3.0);
  const PathSpec path = make_path({0.0, 0.0, 1.0}, {0.0, 0.0, 1.2}, 0.0, 1.0);
  std::vector<cplx> a;
  for (int steps : {100, 200, 400, 800, 1600}) a.push_back(run_recursion(path, grid, p, steps).a);
  const cplx limit = 2.0 * a[4] - a[3];
  for (int i = 0; i + 2 < 5; ++i) {
    const double ratio = std::abs(a[i] - limit) / std::abs(a[i + 1] - limit);
    EXPECT_GT(ratio, 1.6) << i;
    EXPECT_LT(ratio, 2.4) << i;
  }
}

TEST(StepRecursion, GrowthStaysBounded) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = small_grid(3.0);
  const PathSpec path = make_path({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, 0.0, 4.0);
  const cplx a1 = run_recursion(make_path({0, 0, 1}, {0, 0, 1}, 0.0, 1.0), grid, p, 400).a;
  const cplx a4 = run_recursion(path, grid, p, 1600).a;
  EXPECT_LT(std::abs(a4), 8.0 * std::abs(a1));
}

TEST(StepRecursion, OverflowIsSignalled) {
  const AtomParams p = make_atom_params(1e60, 1e60, 1.0);
  const ModeGrid grid = small_grid(1.0);
  const PathSpec path = make_path({0.0, 0.0, 0.3}, {0.0, 0.0, 0.3}, 0.0, 1.0);
  EXPECT_THROW(run_recursion(path, grid, p, 20), std::overflow_error);
}

TEST(StepRecursion, RejectsMismatchedState) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = small_grid(3.0);
  const ModeGrid other = make_mode_grid({1.0}, 3.0, {{0.1, 0.0}});
  const PathSpec path = make_path({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, 0.0, 1.0);
  EXPECT_THROW(step_recursion(initial_state(other, 0.1), path, grid, p), DomainError);
  EXPECT_THROW(initial_state(grid, 0.0), DomainError);
  EXPECT_THROW(make_path({0, 0, 1}, {0, 0, -1}, 0.0, 1.0), DomainError);
  EXPECT_THROW(make_path({0, 0, 1}, {0, 0, 1}, 0.0, 0.0), DomainError);
}

TEST(TimeIntegrals, OrderedExponentialMatchesHighPrecision) {
  struct Case {
    double a, b, tau, re, im;
  };
  const Case cases[] = {{1.3, 0.2, 2.0, -0.50857149864831229, 1.5122975570624845},
                        {-2.0, 3.1, 1.5, 0.63742427036275042, -0.26957449384779817},
                        {0.7, 1e-7, 3.0, 0.62835380071726828, 3.9252779254082739},
                        {-4.0, 4.0, 2.5, 0.11494197056727828, -0.65900131943058561}};
  for (const Case& c : cases) {
    const cplx v = ordered_exp_integral(c.a, c.b, c.tau);
    EXPECT_NEAR(v.real(), c.re, 1e-14) << c.a << ' ' << c.b;
    EXPECT_NEAR(v.imag(), c.im, 1e-14) << c.a << ' ' << c.b;
  }
  EXPECT_EQ(ordered_exp_integral(1.0, 1.0, 0.0), cplx{0.0});
}

TEST(TimeIntegrals, StationaryDoubleIntegral) {
  for (double w : {0.5, 2.7, 40.0}) {
    for (double tau : {0.1, 3.1}) {
      const cplx want = -I1 * tau / w + (1.0 - std::exp(-I1 * w * tau)) / (w * w);
      EXPECT_NEAR(std::abs(stationary_double_integral(w, tau) - want), 0.0, 1e-14);
    }
  }
  // small tau: tau^2/2 - w^2 tau^4/24
  EXPECT_NEAR(stationary_double_integral(2.0, 1e-4).real(), 0.5e-8 - 4e-16 / 24.0, 1e-22);
}

TEST(SecondOrderA, MatchesDirectQuadrature) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = small_grid(3.0);
  for (const PathSpec& path : {make_path({0.1, 0.0, 1.0}, {0.3, 0.1, 1.3}, 0.0, 1.0),
                               make_path({0.0, 0.0, 0.8}, {0.0, 0.0, 0.8}, 2.0, 1.5)}) {
    const cplx got = second_order_A(path, grid, p);
    const cplx want = brute_second_order(path, grid, p);
    EXPECT_NEAR(std::abs(got - want), 0.0, 1e-12 * std::abs(want));
  }
}

TEST(SecondOrderA, RecursionConvergesAtWeakCoupling) {
  const AtomParams p = scaled_couplings(make_atom_params(1.0, 1.0, 1.0), 1e-2);
  const ModeGrid grid = small_grid(6.0);
  const PathSpec path = make_path({0.1, 0.0, 1.0}, {0.3, 0.1, 1.3}, 0.0, 2.0);
  const cplx exact = second_order_A(path, grid, p);
  const double e1 = std::abs(run_recursion(path, grid, p, 100).a - exact);
  const double e2 = std::abs(run_recursion(path, grid, p, 200).a - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 1.0, 0.2);
}

TEST(Momentum, DerivativeIsForceModeSum) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = make_mode_grid({1.0, 2.0, 3.0}, 5.0, {{0.2, 0.0}, {0.7, 1.0}, {1.2, 2.5}});
  for (double v : {0.0, 0.05, -0.1}) {
    const double tau = 2.3;
    auto pz = [&](double t) { return momentum_expectation(1.2, v, t, grid, p)[2]; };
    const double h = 1e-3;
    const double d1 = (pz(tau + h) - pz(tau - h)) / (2 * h);
    const double d2 = (pz(tau + h / 2) - pz(tau - h / 2)) / h;
    const double f = truncated_force(1.2, v, tau, grid, p);
    EXPECT_NEAR((4 * d2 - d1) / 3, f, 1e-8 * std::abs(f)) << "v=" << v;
  }
  EXPECT_EQ(momentum_expectation(1.2, 0.05, 0.0, grid, p)[2], 0.0);
}

TEST(Momentum, GeneratingFunctionDerivative) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = make_mode_grid({1.0, 2.0, 3.0}, 5.0, {{0.2, 0.0}, {0.7, 1.0}, {1.2, 2.5}});
  const Vec3 vel{0.0, 0.0, 0.05};
  const double want = momentum_expectation(1.2, vel, 3.0, grid, p)[2];
  EXPECT_NEAR(momentum_from_generating_function(1.2, vel, 3.0, grid, p), want, 1e-9 * std::abs(want));
  const cplx z0 = generating_function_check(1.2, vel, 3.0, grid, p, {0.0, 0.0, 0.0});
  EXPECT_GT(z0.real(), 0.0);
  EXPECT_EQ(z0.imag(), 0.0);
}

TEST(Momentum, ParallelMotionHasNoEffect) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  const ModeGrid grid = make_mode_grid({1.0, 2.0}, 5.0, {{0.2, 0.0}, {0.7, 1.0}});
  const Vec3 a = momentum_expectation(1.0, Vec3{0.2, -0.3, 0.01}, 2.0, grid, p);
  const Vec3 b = momentum_expectation(1.0, Vec3{0.0, 0.0, 0.01}, 2.0, grid, p);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[0], 0.0);
  EXPECT_EQ(a[1], 0.0);
  EXPECT_THROW(momentum_expectation(0.0, 0.0, 1.0, grid, p), DomainError);
  EXPECT_THROW(momentum_expectation(1.0, 0.0, -1.0, grid, p), DomainError);
}
