#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "eplab/errors.hpp"
#include "eplab/linear_core.hpp"
#include "eplab/oracle.hpp"

using namespace eplab::linear;
namespace oracle = eplab::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

// v'' + h v + c v^-3 for a solution given through its square.
oracle::ValidationReport scan_square(const std::function<double(double)>& square, double h, double c,
                                     oracle::Window window, std::size_t samples = 1001) {
  return oracle::residual_scan_power(
      "pinney", square, 2,
      [h, c](double, double v, double, double d2v) { return sep_residual(h, c, v, d2v); }, window,
      samples, 1e-8);
}

double square_of(const PinneySolution& sol, double z) {
  const auto v = sol(z);
  return v.real() * v.real() - v.imag() * v.imag();
}

}  // namespace

TEST(LinearBasis, Examples) {
  const auto pos = make_basis(Branch::Positive, 1.0);
  EXPECT_EQ(pos.u1(0.0), 1.0);
  EXPECT_EQ(pos.u2(0.0), 0.0);
  EXPECT_EQ(pos.wronskian(), 1.0);

  const auto zero = make_basis(Branch::Zero, 0.0);
  EXPECT_EQ(zero.u2(3.0), 3.0);
  EXPECT_EQ(zero.wronskian(), 1.0);

  const auto neg = make_basis(Branch::Negative, 2.0);
  for (double z : {-1.0, 0.0, 0.7, 3.0}) {
    const double w = neg.u1(z) * neg.du2(z) - neg.u2(z) * neg.du1(z);
    // cosh/sinh products of size e^{2 lambda z} cancel here.
    EXPECT_NEAR(w / neg.wronskian(), 1.0, 1e-12 * std::cosh(2.0 * 2.0 * z));
  }
  EXPECT_EQ(neg.wronskian(), 2.0);
}

TEST(LinearBasis, RejectsNonPositiveLambda) {
  EXPECT_THROW(make_basis(Branch::Positive, 0.0), eplab::InvalidParameter);
  EXPECT_THROW(make_basis(Branch::Negative, -1.0), eplab::InvalidParameter);
  EXPECT_NO_THROW(make_basis(Branch::Zero, -1.0));
}

TEST(LinearBasis, WronskianConstantOverThousandPoints) {
  for (auto [branch, lambda] : {std::pair{Branch::Positive, 1.3}, std::pair{Branch::Zero, 0.0},
                                std::pair{Branch::Negative, 0.8}}) {
    const auto b = make_basis(branch, lambda);
    for (int i = 0; i < 1000; ++i) {
      const double z = -5.0 + 10.0 * i / 999.0;
      const double w = b.u1(z) * b.du2(z) - b.u2(z) * b.du1(z);
      EXPECT_NEAR(w, b.wronskian(), 1e-12 * std::max(1.0, b.u1(z) * b.du2(z))) << to_string(branch) << " " << z;
    }
  }
}

TEST(LinearBasis, SolvesTheLinearEquation) {
  for (auto [branch, lambda] : {std::pair{Branch::Positive, 0.7}, std::pair{Branch::Zero, 0.0},
                                std::pair{Branch::Negative, 0.7}}) {
    const auto b = make_basis(branch, lambda);
    const double h = b.h();
    for (auto u : {std::function<double(double)>([&](double z) { return b.u1(z); }),
                   std::function<double(double)>([&](double z) { return b.u2(z); })}) {
      const auto r = oracle::residual_scan(
          "basis", u, [h](double, double v, double, double d2v) { return d2v + h * v; }, {0.0, 4.0}, 201, 1e-8);
      EXPECT_TRUE(r.passed) << to_string(branch) << " " << r.max_residual;
    }
  }
}

TEST(PinneyParticular, Examples) {
  const auto b = make_basis(Branch::Positive, 1.0);
  EXPECT_NEAR(pinney_particular(b, 0.0, kPi / 3.0).real(), 0.5, 1e-15);
  for (double z : {0.0, 0.4, 2.0, 7.0}) {
    const auto v = pinney_particular(b, -1.0, z);
    EXPECT_NEAR(v.real(), 1.0, 1e-15);
    EXPECT_EQ(v.imag(), 0.0);
  }
  // Negative radicand: principal root on the positive imaginary axis.
  const auto v = pinney_particular(b, 4.0, kPi / 2.0);
  EXPECT_EQ(v.real(), 0.0);
  EXPECT_NEAR(v.imag(), 2.0, 1e-15);
}

TEST(PinneyParticular, ResidualOverTenUnits) {
  const auto b = make_basis(Branch::Positive, 1.0);
  const PinneySolution sol(b, {1.0, -1.0, 0.0, 1.0});
  const auto r = scan_square([&](double z) { return square_of(sol, z); }, 1.0, 1.0, {0.0, 10.0}, 401);
  EXPECT_TRUE(r.passed) << r.max_residual << " at " << r.worst_zeta;
  EXPECT_GT(r.evaluated, 200u);
}

// Near the zeros of cos 2z the residual terms grow like v^-3, so on a dense grid
// the residual is checked after multiplying through by 2v^3 (the squared form).
TEST(PinneyParticular, WeightedResidualOnDenseGrid) {
  const auto b = make_basis(Branch::Positive, 1.0);
  const PinneySolution sol(b, {1.0, -1.0, 0.0, 1.0});
  const auto r = oracle::residual_scan_power(
      "pinney-weighted", [&](double z) { return square_of(sol, z); }, 2,
      [](double, double v, double, double d2v) { return 2.0 * v * v * v * sep_residual(1.0, 1.0, v, d2v); },
      {0.0, 10.0}, 1001, 1e-8);
  EXPECT_TRUE(r.passed) << r.max_residual << " at " << r.worst_zeta;
  const auto raw = scan_square([&](double z) { return square_of(sol, z); }, 1.0, 1.0, {0.0, 10.0});
  RecordProperty("unweighted_max_residual", std::to_string(raw.max_residual));
}

TEST(PinneyGeneral, SpecializationReproducesParticular) {
  const auto b = make_basis(Branch::Positive, 0.5);
  const double c = 0.3;
  const PinneySolution sol(b, {1.0, -c / (0.25), 0.0, c});
  for (double z = -3.0; z <= 3.0; z += 0.37) {
    EXPECT_LT(std::abs(sol(z) - pinney_particular(b, c, z)), 1e-14) << z;
  }
}

// With the constraint a1 a2 - a3^2 = -c/W^2 the unit coefficients solve the
// equation for c = -1 (lambda = 1).
TEST(PinneyGeneral, IdentityCase) {
  const auto b = make_basis(Branch::Positive, 1.0);
  const PinneySolution sol(b, {1.0, 1.0, 0.0, -1.0});
  for (double z = 0.0; z < 10.0; z += 0.5) EXPECT_NEAR(sol(z).real(), 1.0, 1e-15);
  EXPECT_THROW(PinneySolution(b, {1.0, 1.0, 0.0, 1.0}), eplab::ConstraintViolation);
}

TEST(PinneyGeneral, TwoOneOneResidual) {
  const auto b = make_basis(Branch::Positive, 1.0);
  const PinneySolution sol(b, {2.0, 1.0, 1.0, -1.0});
  const auto r = scan_square([&](double z) { return square_of(sol, z); }, 1.0, -1.0, {0.0, 10.0});
  EXPECT_TRUE(r.passed) << r.max_residual;
  EXPECT_EQ(r.skipped, 0u);
}

TEST(PinneyGeneral, RandomConstrainedCoefficients) {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::size_t evaluated = 0;
  for (int i = 0; i < 120; ++i) {
    const Branch branch = i % 3 == 0 ? Branch::Positive : (i % 3 == 1 ? Branch::Zero : Branch::Negative);
    const double lambda = branch == Branch::Zero ? 0.0 : 0.3 + std::abs(unit(rng));
    const auto b = make_basis(branch, lambda);
    const double w = b.wronskian();
    const double c = 2.0 * unit(rng);
    const double a1 = 0.2 + std::abs(unit(rng));
    const double a3 = unit(rng);
    const double a2 = (a3 * a3 - c / (w * w)) / a1;
    const PinneySolution sol(b, {a1, a2, a3, c});
    const auto r = scan_square([&](double z) { return square_of(sol, z); }, b.h(), c, {0.0, 3.0}, 201);
    evaluated += r.evaluated;
    if (r.evaluated > 0) {
      EXPECT_TRUE(r.passed) << "case " << i << ": " << r.max_residual << " at " << r.worst_zeta;
    }
  }
  EXPECT_GT(evaluated, 120u * 100u);
}

TEST(SepSolution, Examples) {
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double c : {-1.0, 0.0, 2.0}) {
      EXPECT_EQ(sep_solution(Branch::Positive, lambda, c, 0.0), eplab::ComplexValue(1.0, 0.0));
    }
  }
  const auto v0 = sep_solution(Branch::Zero, 0.0, 1.0, 2.0);
  EXPECT_NEAR(v0.real(), 0.0, 1e-15);
  EXPECT_NEAR(v0.imag(), std::sqrt(3.0), 1e-15);
}

TEST(SepSolution, PositiveBranchEqualsPinneyParticular) {
  const auto b = make_basis(Branch::Positive, 1.0);
  for (int i = 0; i <= 200; ++i) {
    const double z = -5.0 + 10.0 * i / 200.0;
    EXPECT_LT(std::abs(sep_solution(Branch::Positive, 1.0, 1.0, z) - pinney_particular(b, 1.0, z)), 1e-12) << z;
  }
}

TEST(SepSolution, InitialConditions) {
  for (Branch branch : {Branch::Negative, Branch::Zero, Branch::Positive}) {
    const auto w = [&](double z) { return sep_square(branch, 0.8, 0.6, z); };
    EXPECT_NEAR(w(0.0), 1.0, 1e-15);
    EXPECT_NEAR(oracle::derivative(w, 0.0, 1), 0.0, 1e-10) << to_string(branch);
  }
}

TEST(SepSolution, ResidualOnEveryBranch) {
  for (Branch branch : {Branch::Negative, Branch::Zero, Branch::Positive}) {
    for (double c : {-2.0, -0.5, 0.0, 0.5, 3.0}) {
      const double lambda = 1.0;
      const double h = branch == Branch::Positive ? 1.0 : (branch == Branch::Negative ? -1.0 : 0.0);
      const oracle::Window window = branch == Branch::Positive ? oracle::Window{0.0, 10.0} : oracle::Window{-3.0, 3.0};
      const auto r = scan_square([&](double z) { return sep_square(branch, lambda, c, z); }, h, c, window, 401);
      EXPECT_TRUE(r.passed) << to_string(branch) << " c=" << c << ": " << r.max_residual << " at " << r.worst_zeta;
    }
  }
}

TEST(SepSolution, SquareMatchesUnfactoredFormula) {
  for (double z = -2.0; z <= 2.0; z += 0.1) {
    const double s = std::sin(0.5 * z);
    EXPECT_NEAR(sep_square(Branch::Positive, 0.5, 1.0, z), 1.0 - 5.0 * s * s, 1e-14);
    const double sh = std::sinh(0.5 * z);
    EXPECT_NEAR(sep_square(Branch::Negative, 0.5, 1.0, z), 1.0 - 3.0 * sh * sh, 1e-13);
  }
}
