#include "eplab/reid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "eplab/errors.hpp"
#include "eplab/oracle.hpp"
#include "eplab/specfun.hpp"

namespace eplab::reid {
namespace {

double theta_minus(const ReidParams& rp, double zeta) {
  const double m = rp.m, l = rp.lambda, A = rp.A(), B = rp.B();
  const double base = A * std::exp(m * l * zeta) + B * std::exp(-m * l * zeta);
  const double e2 = std::exp(2.0 * m * l * zeta);
  const double f = specfun::hyp2f1(1.0, (m - 1.0) / m, (m + 1.0) / m, -(A / B) * e2);
  return (A * e2 + B) / (2.0 * l * B * std::pow(base, 2.0 / m)) * f;
}

double theta_zero(const ReidParams& rp, double zeta) {
  const double m = rp.m;
  if (zeta == 0.0) return 0.0;
  return zeta * specfun::hyp2f1(1.0 / m, 2.0 / m, (m + 1.0) / m, -rp.B0() * std::pow(zeta, m));
}

// A cos x + B sin x = R sin(x + atan2(A, B)); the sin^{2/m} prefactor over
// (R sin)^{2/m} reduces to R^{-2/m} under principal powers.
double theta_plus(const ReidParams& rp, double zeta) {
  const double m = rp.m, l = rp.lambda, A = rp.A(), B = rp.B();
  const double R = std::hypot(A, B);
  const double phi = m * l * zeta + std::atan2(A, B);
  const double cphi = std::cos(phi);
  const double f = specfun::hyp2f1(0.5, 0.5 + 1.0 / m, 1.5, cphi * cphi);
  return -cphi * f / (m * l * std::pow(R, 2.0 / m));
}

double reference_zeta(const ReidParams& rp, double zeta) {
  const double m = rp.m, l = rp.lambda;
  switch (rp.branch) {
    case Branch::Negative: {
      const double ratio = rp.A() / rp.B();
      if (!(ratio > 0.0)) throw DegenerateParameters("theta_m: no series anchor for A/B <= 0");
      return std::log(0.5 / ratio) / (2.0 * m * l);
    }
    case Branch::Zero:
      return 0.0;
    case Branch::Positive: {
      const double shift = std::atan2(rp.A(), rp.B());
      const double phi = m * l * zeta + shift;
      const double k = std::floor(phi / std::numbers::pi);
      const double phi_ref = k * std::numbers::pi + std::numbers::pi / 2.0;
      return (phi_ref - shift) / (m * l);
    }
  }
  return 0.0;
}

}  // namespace

double ReidParams::A() const { return std::pow(a_amp, m); }

double ReidParams::B() const {
  return c_tilde / (4.0 * lambda * lambda * std::pow(a_amp, m) * (m - 1.0));
}

double ReidParams::B0() const { return c_tilde / (m - 1.0); }

void validate(const ReidParams& rp) {
  if (rp.m < 2) throw InvalidParameter("reid: m must be at least 2");
  if (rp.branch != Branch::Zero && !(rp.lambda > 0.0)) {
    throw InvalidParameter("reid: lambda must be positive off the Zero branch");
  }
}

double q_m(double u1, double u2, const ReidParams& rp) {
  return rp.c_tilde * std::pow(u1 * u2, rp.m - 2);
}

namespace {

/// u1 + beta u2 written without cancellation at its zero.
double basis_combination(const linear::LinearBasis& basis, double beta, double zeta) {
  const double x = basis.lambda() * zeta;
  switch (basis.branch()) {
    case Branch::Positive:
      return std::hypot(1.0, beta) * std::cos(x - std::atan(beta));
    case Branch::Negative:
      if (std::abs(beta) < 1.0) return std::sqrt(1.0 - beta * beta) * std::cosh(x + std::atanh(beta));
      if (std::abs(beta) > 1.0) {
        return std::copysign(std::sqrt(beta * beta - 1.0), beta) * std::sinh(x + std::atanh(1.0 / beta));
      }
      return beta > 0.0 ? std::exp(x) : std::exp(-x);
    case Branch::Zero:
      break;
  }
  return beta == 0.0 ? 1.0 : beta * (zeta + 1.0 / beta);
}

}  // namespace

double reid_power(const linear::LinearBasis& basis, const ReidParams& rp, double zeta) {
  validate(rp);
  const double w = basis.wronskian();
  const double K = rp.c_tilde / ((rp.m - 1.0) * w * w);
  const double u1 = basis.u1(zeta), u2 = basis.u2(zeta);
  if (K > 0.0 && rp.m % 2 == 1) {
    // a^m + b^m = (a + b) sum_j (-1)^j a^(m-1-j) b^j with b = K^(1/m) u2. The
    // sum has no real zero for odd m; the zeros all sit in the first factor.
    const double beta = std::pow(K, 1.0 / rp.m);
    const double a = u1, b = beta * u2;
    double q = 0.0;
    for (int j = 0; j < rp.m; ++j) {
      q += (j % 2 ? -1.0 : 1.0) * std::pow(a, rp.m - 1 - j) * std::pow(b, j);
    }
    return basis_combination(basis, beta, zeta) * q;
  }
  return std::pow(u1, rp.m) + K * std::pow(u2, rp.m);
}

ComplexValue reid_general(const linear::LinearBasis& basis, const ReidParams& rp, double zeta) {
  return principal_root(reid_power(basis, rp, zeta), rp.m);
}

double reid_residual(double h, double q, int m, double v, double d2v) {
  if (v == 0.0) throw SingularityError("reid_residual: v = 0");
  return d2v + h * v - q * std::pow(v, 1 - 2 * m);
}

ComplexValue v_m(const ReidParams& rp, double zeta) {
  validate(rp);
  const double m = rp.m;
  double s = 0.0;
  switch (rp.branch) {
    case Branch::Negative:
      s = rp.A() * std::exp(m * rp.lambda * zeta) + rp.B() * std::exp(-m * rp.lambda * zeta);
      break;
    case Branch::Zero:
      s = 1.0 + rp.B0() * std::pow(zeta, rp.m);
      break;
    case Branch::Positive:
      s = rp.A() * std::cos(m * rp.lambda * zeta) + rp.B() * std::sin(m * rp.lambda * zeta);
      break;
  }
  return principal_root(s, rp.m);
}

double theta_m_closed(const ReidParams& rp, double zeta) {
  validate(rp);
  switch (rp.branch) {
    case Branch::Negative: return theta_minus(rp, zeta);
    case Branch::Zero: return theta_zero(rp, zeta);
    case Branch::Positive: return theta_plus(rp, zeta);
  }
  return 0.0;
}

PhaseEvaluation theta_m_detailed(const ReidParams& rp, double zeta) {
  try {
    return {theta_m_closed(rp, zeta), PhaseMethod::ClosedForm, zeta};
  } catch (const DegenerateParameters&) {
  }
  const double ref = reference_zeta(rp, zeta);
  const double anchor = theta_m_closed(rp, ref);
  return {anchor + phase_quadrature(rp, ref, zeta), PhaseMethod::QuadratureFallback, ref};
}

double phase_quadrature(const ReidParams& rp, double from, double to, double tol) {
  if (from == to) return 0.0;
  auto integrand = [&](double z) {
    const ComplexValue v = v_m(rp, z);
    if (std::abs(v) == 0.0) {
      std::ostringstream msg;
      msg << "phase_quadrature: v_m vanishes at zeta = " << z;
      throw SingularityError(msg.str());
    }
    return (1.0 / (v * v)).real();
  };
  return oracle::integrate(integrand, from, to, tol).value;
}

ComplexValue u_m(const ReidParams& rp, const invariant::ThetaConstants& k, chiellini::Sign sign,
                 double zeta) {
  const double phase = theta_m(rp, zeta);
  return invariant::compose_amplitude_phase(k, sign, phase, v_m(rp, zeta));
}

invariant::ThetaConstants unity_theta_constants(Branch branch) {
  switch (branch) {
    case Branch::Negative: return {1.0, 2.0, 0.5};
    case Branch::Zero: return {1.0, 1.0, 0.0};
    case Branch::Positive: return {1.0, 2.0, -0.5};
  }
  return {};
}

ReidParams unity_params(Branch branch, int m) {
  ReidParams rp;
  rp.m = m;
  rp.branch = branch;
  rp.lambda = 0.5;
  return rp;
}

ComplexValue u_m2_elementary(Branch branch, bool upper, double zeta) {
  const double s = upper ? 1.0 : -1.0;
  switch (branch) {
    case Branch::Negative: {
      const double v2 = std::exp(zeta) + std::exp(-zeta);
      const double t2 = -1.0 - s * std::sqrt(3.0) * std::sinh(std::numbers::sqrt2 *
                                                               std::atan(std::exp(zeta)));
      return principal_sqrt(v2 * t2);
    }
    case Branch::Zero: {
      const double at = std::atan(zeta);
      return principal_sqrt((zeta * zeta + 1.0) * (at * at - 1.0));
    }
    case Branch::Positive: {
      const double v2 = std::cos(zeta) + std::sin(zeta);
      const double x = (std::cos(zeta) - std::sin(zeta)) / std::numbers::sqrt2;
      const double t2 = 1.0 + s * std::sqrt(5.0) * std::sin(std::atanh(x));
      return principal_sqrt(v2 * t2);
    }
  }
  return {};
}

}  // namespace eplab::reid
