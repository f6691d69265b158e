#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/steady_state.hpp"

using namespace casimir;

namespace {

const AtomParams kP = make_atom_params(0.8, 1.3, 2.0);

}  // namespace

TEST(StationaryForce, RetardationMatchesHighPrecisionReference) {
  // -(alpha0 omega0^2 / 4 pi) K'''(r), mpmath
  const std::pair<double, double> refs[] = {{0.05, 529.53253756315061},
                                            {0.7, 0.18676765724707115},
                                            {12.0, 1.423480282479358e-5},
                                            {300.0, 4.7637369070214279e-11}};
  for (const auto& [r, f] : refs) {
    EXPECT_NEAR(stationary_retardation_force(r, kP).f_z, f, 1e-10 * std::abs(f)) << "r=" << r;
  }
}

TEST(StationaryPotential, MatchesHighPrecisionReference) {
  const std::pair<double, double> refs[] = {{0.05, -1026.7796368636773},
                                            {0.7, -0.31721645806398778},
                                            {12.0, -1.40865957586297e-5},
                                            {300.0, -3.8310646215295391e-11}};
  for (const auto& [r, u] : refs) {
    EXPECT_NEAR(stationary_potential(r, kP).u, u, 1e-11 * std::abs(u)) << "r=" << r;
  }
}

TEST(StationaryForce, Decomposition) {
  for (double r : {0.05, 0.7, 12.0}) {
    const double el = electrostatic_force(r, kP).f_z;
    EXPECT_DOUBLE_EQ(el, -3.0 * 1.3 * 0.8 / (8.0 * std::pow(r, 4)));
    const double tot = stationary_total_force(r, kP).f_z;
    EXPECT_NEAR(tot, el + stationary_retardation_force(r, kP).f_z, 1e-14 * std::abs(el));
    EXPECT_NEAR(stationary_potential_gradient_force(r, kP).f_z, tot, 1e-10 * std::abs(tot));
  }
}

TEST(StationaryForce, KFormAgrees) {
  const QuadratureConfig cfg;
  for (double r : {0.05, 0.7, 12.0, 300.0}) {
    const ForceValue k = stationary_retardation_force_kform(r, kP, cfg);
    const double x = stationary_retardation_force(r, kP).f_z;
    EXPECT_NEAR(k.f_z, x, 1e-6 * std::abs(x)) << "r=" << r;
  }
}

TEST(StationaryPotential, Limits) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  EXPECT_NEAR(std::pow(0.001, 3) * stationary_potential(0.001, p).u, -1.0 / 8.0, 1e-3 / 8.0);
  const double far = -3.0 / (8.0 * std::numbers::pi);
  EXPECT_NEAR(std::pow(1000.0, 4) * stationary_potential(1000.0, p).u, far, 1e-4 * std::abs(far));
}

TEST(StationaryForce, TotalIsAttractiveAndMonotone) {
  const AtomParams p = make_atom_params(1.0, 1.0, 1.0);
  double prev = -kInfinity;
  for (int i = 0; i <= 40; ++i) {
    const double r = 0.01 * std::pow(1e4, i / 40.0);
    const double f = stationary_total_force(r, p).f_z;
    EXPECT_LT(f, 0.0) << "r=" << r;
    EXPECT_GT(f, prev) << "r=" << r;
    prev = f;
  }
}

TEST(StationaryForce, RetardationDerivatives) {
  const auto d = retardation_force_derivs(1.5, 3, kP);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[0], stationary_retardation_force(1.5, kP).f_z);
  EXPECT_NEAR(d[1], -0.037060397550191332, 1e-12);
  EXPECT_NEAR(d[2], 0.10113421792784597, 1e-12);
  EXPECT_NEAR(d[3], -0.34117663843236029, 1e-12);
  EXPECT_THROW(retardation_force_derivs(1.5, 6, kP), DomainError);
}

TEST(Regime, Thresholds) {
  const AtomParams p = make_atom_params(2.0, 1.0, 1.0);
  EXPECT_EQ(classify_regime(0.01, p), Regime::Near);
  EXPECT_EQ(classify_regime(1.0, p), Regime::Intermediate);
  EXPECT_EQ(classify_regime(10.0, p), Regime::Far);
  EXPECT_STREQ(regime_name(Regime::Far), "far");
}

TEST(StationaryForce, RejectsBadDistance) {
  EXPECT_THROW(stationary_total_force(0.0, kP), DomainError);
  EXPECT_THROW(stationary_potential(-1.0, kP), DomainError);
}
