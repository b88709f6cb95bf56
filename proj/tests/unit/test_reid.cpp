#include <gtest/gtest.h>

#include <cmath>
#include <iostream>
#include <numbers>
#include <random>

#include "eplab/errors.hpp"
#include "eplab/oracle.hpp"
#include "eplab/reid.hpp"
#include "eplab/validation.hpp"

using namespace eplab::reid;
using eplab::ComplexValue;
using eplab::chiellini::Sign;
using eplab::linear::LinearBasis;
namespace oracle = eplab::oracle;

namespace {

// With `relative`, the residual is divided by max(1, |q v^(1-2m)|): close to a
// zero of v that term is large and double rounding alone exceeds 1e-8.
oracle::ValidationReport reid_residual_scan(const ReidParams& rp, oracle::Window window, std::size_t samples = 501,
                                            bool relative = false) {
  const LinearBasis basis(rp.branch, rp.lambda);
  return oracle::residual_scan_power(
      "reid", [&](double z) { return reid_power(basis, rp, z); }, rp.m,
      [&](double z, double v, double, double d2v) {
        const double q = q_m(basis.u1(z), basis.u2(z), rp);
        const double r = reid_residual(basis.h(), q, rp.m, v, d2v);
        return relative ? r / std::max(1.0, std::abs(q * std::pow(v, 1 - 2 * rp.m))) : r;
      },
      window, samples, 1e-8);
}

}  // namespace

TEST(ReidParams, DerivedConstants) {
  ReidParams rp{3, Branch::Positive, 0.5, 1.2, 7.0, 0.9};
  EXPECT_DOUBLE_EQ(rp.A(), std::pow(1.2, 3));
  EXPECT_DOUBLE_EQ(rp.B(), 0.9 / (4.0 * 0.25 * std::pow(1.2, 3) * 2.0));
  EXPECT_DOUBLE_EQ(rp.B0(), 0.45);
  EXPECT_THROW(validate({1, Branch::Positive, 0.5, 1.0, 1.0, 1.0}), eplab::InvalidParameter);
  EXPECT_THROW(validate({2, Branch::Negative, 0.0, 1.0, 1.0, 1.0}), eplab::InvalidParameter);
  EXPECT_NO_THROW(validate({2, Branch::Zero, 0.0, 1.0, 1.0, 1.0}));
}

TEST(QM, Examples) {
  ReidParams rp;
  rp.c_tilde = 1.7;
  rp.m = 2;
  EXPECT_EQ(q_m(0.3, -4.0, rp), 1.7);
  rp.m = 3;
  rp.c_tilde = 1.0;
  EXPECT_EQ(q_m(2.0, 3.0, rp), 6.0);
  rp.m = 4;
  rp.c_tilde = 2.0;
  EXPECT_EQ(q_m(1.0, 1.0, rp), 2.0);
}

TEST(ReidGeneral, OriginIsOne) {
  const LinearBasis basis(Branch::Positive, 0.8);
  for (int m = 2; m <= 5; ++m) {
    ReidParams rp{m, Branch::Positive, 0.8, 1.0, 1.0, 1.3};
    EXPECT_NEAR(std::abs(reid_general(basis, rp, 0.0) - ComplexValue(1.0, 0.0)), 0.0, 1e-15) << m;
  }
}

// At m = 2 the Reid solution is the Pinney one with c = -c~.
TEST(ReidGeneral, SecondOrderIsPinney) {
  for (double lambda : {0.5, 1.0}) {
    const LinearBasis basis(Branch::Positive, lambda);
    for (double ct : {1.0, 0.5, -0.3}) {
      ReidParams rp{2, Branch::Positive, lambda, 1.0, 1.0, ct};
      for (int i = 0; i <= 100; ++i) {
        const double z = 10.0 * i / 100.0;
        EXPECT_LT(std::abs(reid_general(basis, rp, z) - eplab::linear::pinney_particular(basis, -ct, z)), 1e-9);
      }
    }
  }
}

TEST(ReidGeneral, ResidualUnityThirdOrder) {
  const auto r = reid_residual_scan(unity_params(Branch::Positive, 3), {0.0, 10.0});
  EXPECT_TRUE(r.passed) << r.max_residual << " at " << r.worst_zeta;
}

TEST(ReidGeneral, ResidualRandomParameterSets) {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> lam(0.3, 1.5), ct(0.2, 2.0);
  for (int m : {2, 3, 4}) {
    for (int i = 0; i < 20; ++i) {
      ReidParams rp{m, Branch::Positive, lam(rng), 1.0, 1.0, ct(rng)};
      const auto r = reid_residual_scan(rp, {0.0, 10.0}, 301, true);
      EXPECT_TRUE(r.passed) << "m=" << m << " lambda=" << rp.lambda << " c~=" << rp.c_tilde << ": "
                            << r.max_residual << " at " << r.worst_zeta;
      EXPECT_GT(r.evaluated, 100u);
    }
  }
}

TEST(ReidGeneral, ResidualOtherBranches) {
  for (Branch b : {Branch::Negative, Branch::Zero}) {
    for (int m : {2, 3, 4}) {
      const auto rp = unity_params(b, m);
      const auto r = reid_residual_scan(rp, {0.0, 3.0}, 301);
      EXPECT_TRUE(r.passed) << eplab::linear::to_string(b) << " m=" << m << ": " << r.max_residual;
    }
  }
}

TEST(VM, Examples) {
  ReidParams rp{2, Branch::Negative, 0.5, 1.0, 1.0, 1.0};
  rp.c_tilde = 4.0 * 0.25 * 1.0;  // B = 1
  EXPECT_NEAR(v_m(rp, 0.0).real(), std::sqrt(2.0), 1e-15);
  for (int m = 2; m <= 5; ++m) {
    ReidParams z{m, Branch::Zero, 0.0, 1.0, 1.0, 3.0};
    EXPECT_EQ(v_m(z, 0.0), ComplexValue(1.0, 0.0));
    ReidParams p{m, Branch::Positive, 0.7, 1.3, 1.0, 1.0};
    EXPECT_NEAR(v_m(p, 0.0).real(), 1.3, 1e-14);
  }
}

TEST(ThetaM, Examples) {
  for (int m = 2; m <= 5; ++m) EXPECT_EQ(theta_m(unity_params(Branch::Zero, m), 0.0), 0.0);
  const auto rp = unity_params(Branch::Zero, 2);
  ASSERT_EQ(rp.B0(), 1.0);
  for (double z = -3.0; z <= 3.0; z += 0.25) EXPECT_NEAR(theta_m(rp, z), std::atan(z), 1e-12) << z;
}

TEST(ThetaM, ThirdOrderNegativeBranchAgainstQuadrature) {
  const auto rp = unity_params(Branch::Negative, 3);
  const double anchor = theta_m(rp, 0.0);
  for (double z = 0.0; z <= 2.0; z += 0.1) {
    EXPECT_NEAR(theta_m(rp, z) - anchor, phase_quadrature(rp, 0.0, z), 1e-7) << z;
  }
}

// Derivative of the closed form is v^-2 wherever v is real.
TEST(ThetaM, DerivativeIsInverseSquare) {
  for (int m = 2; m <= 5; ++m) {
    for (Branch b : {Branch::Negative, Branch::Zero, Branch::Positive}) {
      const auto rp = unity_params(b, m);
      for (double z : {0.1, 0.4}) {
        const auto v = v_m(rp, z);
        if (!eplab::is_real(v) || v.real() <= 0.0) continue;
        const double want = 1.0 / (v.real() * v.real());
        EXPECT_NEAR(oracle::derivative([&](double x) { return theta_m(rp, x); }, z, 1, 0.02), want, 1e-7 * want)
            << eplab::linear::to_string(b) << " m=" << m << " z=" << z;
      }
    }
  }
}

TEST(ThetaM, DegenerateClosedFormFallsBack) {
  const auto rp = unity_params(Branch::Positive, 2);
  EXPECT_THROW(theta_m_closed(rp, -0.6), eplab::DegenerateParameters);
  const auto e = theta_m_detailed(rp, -0.6);
  EXPECT_EQ(e.method, PhaseMethod::QuadratureFallback);
  const double elementary = -std::atanh((std::cos(-0.6) - std::sin(-0.6)) / std::numbers::sqrt2) / std::numbers::sqrt2;
  EXPECT_NEAR(e.value, elementary, 1e-9);
}

TEST(ThetaM, AllOrdersAndBranchesMatchQuadrature) {
  for (const auto& r : eplab::validation::run_suite(eplab::validation::Suite::Phase)) {
    EXPECT_TRUE(r.report.passed) << r.id << ": " << r.report.max_residual;
  }
}

TEST(UM, Examples) {
  const auto u0 = u_m(unity_params(Branch::Zero, 2), unity_theta_constants(Branch::Zero), Sign::Plus, 0.0);
  EXPECT_NEAR(u0.real(), 0.0, 1e-15);
  EXPECT_NEAR(u0.imag(), 1.0, 1e-15);
  // Trigonometric branch at the origin, composed against the elementary form.
  const auto rp = unity_params(Branch::Positive, 2);
  const auto up = u_m(rp, unity_theta_constants(Branch::Positive), Sign::Plus, 0.0);
  const auto e = u_m2_elementary(Branch::Positive, false, 0.0);
  EXPECT_LT(std::abs(up * up - e * e), 1e-9);
}

TEST(UM, SecondOrderEqualsElementaryForms) {
  for (Branch b : {Branch::Negative, Branch::Zero, Branch::Positive}) {
    const auto rp = unity_params(b, 2);
    const auto k = unity_theta_constants(b);
    const bool upper = b != Branch::Positive;
    for (int i = 0; i <= 80; ++i) {
      const double z = -2.0 + 4.0 * i / 80.0;
      const ComplexValue u = u_m(rp, k, Sign::Plus, z);
      const ComplexValue e = u_m2_elementary(b, upper, z);
      EXPECT_LT(std::abs(u * u - e * e), 1e-9) << eplab::linear::to_string(b) << " " << z;
      EXPECT_NEAR(std::abs(u), std::abs(e), 1e-9) << eplab::linear::to_string(b) << " " << z;
    }
  }
}

// Monitored, not asserted: whether max |u+|^2 on [0, 4] decreases with m.
TEST(UM, AmplitudeOrderingIsRecorded) {
  const auto k = unity_theta_constants(Branch::Positive);
  double previous = 0.0;
  for (int m : {2, 3, 4}) {
    const auto rp = unity_params(Branch::Positive, m);
    double peak = 0.0;
    for (int i = 0; i <= 400; ++i) {
      try {
        peak = std::max(peak, std::norm(u_m(rp, k, Sign::Plus, 4.0 * i / 400.0)));
      } catch (const eplab::Error&) {
      }
    }
    RecordProperty("peak_m" + std::to_string(m), std::to_string(peak));
    if (previous > 0.0 && peak > previous) {
      std::cout << "note: max |u+|^2 grows from m=" << m - 1 << " to m=" << m << " (" << previous << " -> " << peak << ")\n";
    }
    previous = peak;
  }
}
