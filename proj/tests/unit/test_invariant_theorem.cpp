#include <gtest/gtest.h>

#include <cmath>

#include "eplab/chiellini.hpp"
#include "eplab/errors.hpp"
#include "eplab/invariant_theorem.hpp"
#include "eplab/oracle.hpp"

using namespace eplab::invariant;
namespace oracle = eplab::oracle;

namespace {

EPParams make(double lambda2, double c, double c1, Sign sign = Sign::Plus) {
  EPParams p;
  p.lambda2 = lambda2;
  p.c = c;
  p.c1 = c1;
  p.sign = sign;
  return p;
}

double real_theta(const ThetaConstants& k, Sign sign, double x) {
  const auto t = eplab::principal_sqrt(theta_squared(k, x, sign));
  return eplab::is_real(t) ? t.real() : std::nan("");
}

}  // namespace

TEST(ErmakovInvariant, Examples) {
  EXPECT_EQ(ermakov_invariant({1.3, 0.4, 1.3, 0.4, 2.0, 0.5}), -2.5);
  EXPECT_EQ(ermakov_invariant({1.0, 0.0, 1.0, 1.0, 0.0, 0.0}), 1.0);
  EXPECT_THROW(ermakov_invariant({0.0, 1.0, 1.0, 0.0, 1.0, 1.0}), eplab::SingularityError);
}

TEST(ErmakovInvariant, ConstantAlongUndampedPair) {
  PairIVP ivp;
  ivp.start = {1.0, 0.2, 1.5, -0.1, -1.0, -1.0};
  ivp.lambda2 = 0.25;
  ivp.zeta_a = 0.0;
  ivp.zeta_b = 5.0;
  ivp.damped = false;
  const auto drift = ermakov_pair_drift(ivp, 501, 1e-8);
  EXPECT_TRUE(drift.report.passed) << drift.report.max_residual;
  EXPECT_TRUE(drift.trajectory.completed());
}

TEST(ErmakovInvariant, DriftShrinksWithTolerance) {
  double previous = 0.0;
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    PairIVP ivp;
    ivp.start = {0.8, 0.0, 1.2, 0.3, -2.0, -0.5};
    ivp.lambda2 = 1.0;
    ivp.zeta_b = 5.0;
    ivp.rel_tol = tol;
    ivp.abs_tol = tol * 1e-2;
    ivp.damped = false;
    const double d = ermakov_pair_drift(ivp, 201, 1.0).report.max_residual;
    if (previous > 0.0) {
      EXPECT_LT(d, previous) << tol;
    }
    previous = d;
  }
}

// With Chiellini damping in both members dI/dzeta = 2 W (g(v) u v' - g(u) u' v),
// W = u' v - u v'. The integrated drift rate must match that expression.
TEST(ErmakovInvariant, DampedDriftRateMatchesAnalyticForm) {
  const auto p = make(-0.25, 1.0, 1.0, Sign::Minus);
  PairIVP ivp;
  ivp.start = {2.0, 0.5, 1.2, 0.4, 1.0, p.c};
  ivp.lambda2 = p.lambda2;
  ivp.zeta_a = 0.0;
  ivp.zeta_b = 1.0;
  ivp.damped = true;
  ivp.damping = p;
  const auto drift = ermakov_pair_drift(ivp, 11, 1e-8);
  ASSERT_TRUE(drift.trajectory.completed());
  const auto& tr = drift.trajectory;
  const auto inv = [&](double z) {
    const auto y = tr(z);
    return ermakov_invariant({y[0], y[1], y[2], y[3], 1.0, p.c});
  };
  for (double z : {0.2, 0.5, 0.8}) {
    const auto y = tr(z);
    const double u = y[0], du = y[1], v = y[2], dv = y[3];
    const double w = du * v - u * dv;
    const double want = 2.0 * w * (eplab::chiellini::g_lambda(v, p) * u * dv - eplab::chiellini::g_lambda(u, p) * du * v);
    EXPECT_NEAR(oracle::derivative(inv, z, 1, 0.05), want, 1e-6 * std::max(1.0, std::abs(want))) << z;
  }
}

TEST(MilnePhase, Examples) {
  PhaseAccumulator acc;
  acc.zeta_start = 0.5;
  EXPECT_NEAR(milne_phase([](double) { return 1.0; }, acc, 2.0), 1.5, 1e-14);
  acc.zeta_start = 0.0;
  for (double z : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(milne_phase([](double x) { return std::exp(x); }, acc, z), (1.0 - std::exp(-2.0 * z)) / 2.0, 1e-12);
  }
  EXPECT_THROW(milne_phase([](double x) { return x - 1.0; }, acc, 2.0), eplab::SingularityError);
  acc.tolerance = 0.0;
  EXPECT_THROW(milne_phase([](double) { return 1.0; }, acc, 2.0), eplab::InvalidParameter);
}

TEST(MilnePhase, Additivity) {
  const auto vg = eplab::chiellini::particular_vgamma(1.0, make(0.25, 1.0, 1.0));
  const auto vp = [&](double z) { return vg.real_value(z); };
  PhaseAccumulator a;
  a.zeta_start = -0.2;
  PhaseAccumulator b = a;
  b.zeta_start = 0.3;
  const double whole = milne_phase(vp, a, 0.9);
  EXPECT_NEAR(whole, milne_phase(vp, a, 0.3) + milne_phase(vp, b, 0.9), 1e-10);
}

TEST(ThetaOfPhase, Examples) {
  // Oscillatory branch (c < 0) at zero offset: sqrt(I / (-2c)).
  EXPECT_NEAR(theta_of_phase(1.0, 2.0, -0.5, 0.0, Sign::Plus).real(), 1.0, 1e-15);
  EXPECT_NEAR(theta_of_phase(1.0, 1.0, 0.0, 2.0, Sign::Plus).real(), std::sqrt(3.0), 1e-15);
  EXPECT_THROW(theta_of_phase(0.0, 1.0, 0.0, 2.0, Sign::Plus), eplab::InvalidParameter);
  // Hyperbolic branch at zero offset: -I / (2c) < 0, so theta is imaginary.
  const auto t = theta_of_phase(1.0, 2.0, 0.5, 0.0, Sign::Plus);
  EXPECT_EQ(t.real(), 0.0);
  EXPECT_NEAR(t.imag(), 1.0, 1e-15);
}

TEST(ThetaOfPhase, BranchKeyedOnC) {
  EXPECT_EQ(theta_branch(0.5), ThetaBranch::Hyperbolic);
  EXPECT_EQ(theta_branch(0.0), ThetaBranch::Algebraic);
  EXPECT_EQ(theta_branch(-0.5), ThetaBranch::Oscillatory);
}

// theta theta' = +-sqrt(b + I theta^2 + c theta^4) on every branch.
TEST(ThetaOfPhase, SolvesSeparableEquation) {
  const ThetaConstants cases[] = {{1.0, 2.0, -0.5}, {1.0, 2.0, 0.5}, {1.0, 1.0, 0.0}, {3.0, 1.0, -1.0}};
  for (const auto& k : cases) {
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      int checked = 0;
      for (int i = 0; i <= 60; ++i) {
        const double x = -3.0 + 6.0 * i / 60.0;
        const double t = real_theta(k, sign, x);
        if (!std::isfinite(t) || std::abs(t) < 0.05) continue;
        const auto sq = [&](double y) { return theta_squared(k, y, sign).real(); };
        const double rhs = k.b + k.invariant * t * t + k.c * t * t * t * t;
        if (rhs < 1e-6) continue;
        ++checked;
        const double t_dt = 0.5 * oracle::derivative(sq, x, 1, 0.01);
        EXPECT_NEAR(std::abs(t_dt), std::sqrt(rhs), 1e-7) << k.invariant << " " << k.b << " " << k.c << " x=" << x;
      }
      EXPECT_GT(checked, 5);
    }
  }
}

TEST(InvariantIsC1, Examples) {
  const auto one = invariant_is_c1_check(make(0.25, -0.5, 1.0), 2.0, 1.0);
  EXPECT_TRUE(one.passed) << one.max_residual;
  EXPECT_GT(one.evaluated, 50u);
  const auto three = invariant_is_c1_check(make(0.25, -1.0, 3.0), 1.0, 1.0);
  EXPECT_TRUE(three.passed) << three.max_residual;
  EXPECT_GT(three.evaluated, 50u);
  for (auto [I, b, c, sign] : {std::tuple{1.0, 2.0, 0.5, Sign::Minus}, std::tuple{1.0, 1.0, 0.0, Sign::Plus}}) {
    const auto r = invariant_is_c1_check(make(0.25, c, I, sign), b, 1.0);
    EXPECT_TRUE(r.passed) << c << ": " << r.max_residual;
    EXPECT_GT(r.evaluated, 20u);
  }
}

TEST(InvariantIsC1, PerturbedThetaFails) {
  const ThetaConstants k{1.0, 2.0, -0.5};
  const auto theta = [&](double x) { return 1.01 * real_theta(k, Sign::Plus, x); };
  const auto r = invariant_recovery(theta, k.b, k.c, k.invariant, {-2.0, 2.0}, 101, 1e-8);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_residual, 1e-3);
}

// theta is constant (= 1) for I = -2c and b = c; the construction then returns v_gamma.
TEST(GeneralSolutionU, ConstantThetaGivesAmplitude) {
  const auto p = make(0.25, -0.5, 1.0);
  const GeneralSolutionU u(2.0, p, -0.5);
  for (double z : {0.0, 0.1, 0.3}) {
    EXPECT_LT(std::abs(u(z) - u.amplitude()(z)), 1e-14) << z;
  }
}

TEST(GeneralSolutionU, InvariantOfThePairIsC1) {
  const auto p = make(0.25, 1.0, 1.0);
  const GeneralSolutionU u(1.0, p, 1.0, Sign::Minus);
  const auto r = theorem_invariant_report(u, p, 1.0, {0.3, 1.1}, 101, 1e-6);
  EXPECT_TRUE(r.passed) << r.max_residual << " at " << r.worst_zeta;
  EXPECT_GT(r.evaluated, 50u);
}

TEST(GeneralSolutionU, PhaseMatchesQuadratureOfAmplitude) {
  const auto p = make(0.25, 1.0, 1.0);
  const GeneralSolutionU u(1.0, p, 1.0);
  const auto& v = u.amplitude();
  const double want = oracle::adaptive_quadrature([&](double z) { return 1.0 / v.square(z).real(); }, 0.0, 0.7, 1e-13);
  EXPECT_NEAR(u.phase(0.7), want, 1e-10);
}

TEST(Factorization, Examples) {
  FactorizedPair f;
  f.phi1 = f.psi1 = 0.4;
  f.integral_diff = 0.0;
  f.b = -1.0;
  f.c = -2.0;
  EXPECT_EQ(invariant_via_factorization(f), 3.0);
  EXPECT_EQ(cosh_weight(1.5, 2.5, 1.0, 1.0), 4.0);
}

TEST(Factorization, CoshFormWhenWeightsBalance) {
  // b (c_v/c_u)^2 = c (c_u/c_v)^2 with c_u/c_v = 2: b = 16 c.
  FactorizedPair f;
  f.theta = 0.7;
  f.v = 1.3;
  f.phi1 = 0.2;
  f.psi1 = -0.1;
  f.integral_diff = 0.35;
  f.c = 0.5;
  f.b = 8.0;
  f.c_u = 2.0;
  f.c_v = 1.0;
  const double d = f.phi1 - f.psi1;
  const double lead = f.theta * f.theta * std::pow(f.v, 4) * d * d;
  const double w = cosh_weight(f.b, f.c, f.c_u, f.c_v);
  EXPECT_NEAR(invariant_via_factorization(f), lead - w * std::cosh(2.0 * f.integral_diff), 1e-12);
}

TEST(Factorization, AgreesWithInvariantAlongPair) {
  PairIVP ivp;
  ivp.start = {1.0, 0.2, 1.5, -0.1, -1.0, -1.0};
  ivp.lambda2 = 0.25;
  ivp.zeta_b = 4.0;
  ivp.damped = false;
  const auto drift = ermakov_pair_drift(ivp, 11, 1e-8);
  const auto& tr = drift.trajectory;
  const double cu = ivp.start.u, cv = ivp.start.v;
  for (double z = 0.0; z <= 4.0; z += 0.4) {
    const auto y = tr(z);
    FactorizedPair f;
    f.theta = y[0] / y[2];
    f.v = y[2];
    f.phi1 = y[1] / y[0];
    f.psi1 = y[3] / y[2];
    f.integral_diff = std::log(y[0] / cu) - std::log(y[2] / cv);
    f.b = ivp.start.b;
    f.c = ivp.start.c;
    f.c_u = cu;
    f.c_v = cv;
    EXPECT_NEAR(invariant_via_factorization(f), ermakov_invariant({y[0], y[1], y[2], y[3], f.b, f.c}), 1e-6) << z;
  }
}
