#include "eplab/invariant_theorem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eplab/errors.hpp"

namespace eplab::invariant {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double real_or_nan(ComplexValue z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return kNaN;
  return is_real(z, 1e-13) ? z.real() : kNaN;
}

bool in_radicand_guard(double v, const EPParams& p) {
  return chiellini::radicand(v, p) < oracle::kRadicandGuard * std::max(1.0, p.c1 * p.c1);
}

}  // namespace

double ermakov_invariant(const ErmakovPairState& s) {
  if (s.u == 0.0 || s.v == 0.0) throw SingularityError("ermakov_invariant: u or v vanishes");
  const double r = s.v / s.u;
  const double wr = s.u_dot * s.v - s.u * s.v_dot;
  return -s.b * r * r - s.c / (r * r) + wr * wr;
}

double milne_phase(const std::function<double(double)>& vp, const PhaseAccumulator& acc,
                   double zeta) {
  if (!(acc.tolerance > 0.0)) throw InvalidParameter("milne_phase: tolerance must be positive");
  if (zeta == acc.zeta_start) return 0.0;
  auto integrand = [&](double z) {
    const double v = vp(z);
    if (v == 0.0 || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "milne_phase: amplitude vanishes or is not real at zeta = " << z;
      throw SingularityError(msg.str());
    }
    return 1.0 / (v * v);
  };
  try {
    return oracle::integrate(integrand, acc.zeta_start, zeta, acc.tolerance).value;
  } catch (const NonConvergence& e) {
    throw SingularityError(std::string("milne_phase: integrand not resolvable (") + e.what() + ")");
  }
}

ThetaBranch theta_branch(double c) {
  if (c > 0.0) return ThetaBranch::Hyperbolic;
  if (c < 0.0) return ThetaBranch::Oscillatory;
  return ThetaBranch::Algebraic;
}

ComplexValue theta_squared(const ThetaConstants& k, double dPhase, Sign sign) {
  const double I = k.invariant;
  const double s = chiellini::sign_value(sign);
  switch (theta_branch(k.c)) {
    case ThetaBranch::Hyperbolic: {
      const ComplexValue amp = principal_sqrt(4.0 * k.b * k.c - I * I);
      return (-I - s * amp * std::sinh(2.0 * std::sqrt(k.c) * dPhase)) / (2.0 * k.c);
    }
    case ThetaBranch::Oscillatory: {
      const ComplexValue amp = principal_sqrt(I * I - 4.0 * k.b * k.c);
      return (I + s * amp * std::sin(2.0 * std::sqrt(-k.c) * dPhase)) / (-2.0 * k.c);
    }
    case ThetaBranch::Algebraic:
      break;
  }
  if (I == 0.0) throw InvalidParameter("theta_of_phase: c = 0 requires a nonzero invariant");
  return {I * dPhase * dPhase - k.b / I, 0.0};
}

ComplexValue theta_of_phase(double I_bc, double b, double c, double dPhase, Sign sign) {
  return principal_sqrt(theta_squared({I_bc, b, c}, dPhase, sign));
}

double invariant_from_theta(double theta, double dtheta, double b, double c) {
  if (theta == 0.0) throw SingularityError("invariant_from_theta: theta = 0");
  const double t2 = theta * theta;
  return -b / t2 - c * t2 + dtheta * dtheta;
}

ComplexValue compose_amplitude_phase(const ThetaConstants& k, Sign sign, double phase,
                                     ComplexValue amplitude) {
  return principal_sqrt(theta_squared(k, phase, sign)) * amplitude;
}

GeneralSolutionU::GeneralSolutionU(double gamma, const EPParams& p, double b,
                                   PhaseAccumulator acc)
    : v_gamma_(chiellini::particular_vgamma(gamma, p)),
      k_{p.c1, b, p.c},
      sign_(p.sign),
      acc_(acc) {}

GeneralSolutionU::GeneralSolutionU(double gamma, const EPParams& p, double b, Sign theta_sign,
                                   PhaseAccumulator acc)
    : GeneralSolutionU(gamma, p, b, acc) {
  sign_ = theta_sign;
}

double GeneralSolutionU::phase(double zeta) const {
  return milne_phase([this](double z) { return v_gamma_.real_value(z); }, acc_, zeta);
}

ComplexValue GeneralSolutionU::operator()(double zeta) const {
  return compose_amplitude_phase(k_, sign_, phase(zeta) - acc_.theta0, v_gamma_(zeta));
}

double gen_ermakov_residual(const EPParams& p, double b, double u, double du, double d2u) {
  if (u == 0.0) throw SingularityError("gen_ermakov_residual: u = 0");
  return d2u + chiellini::g_lambda(u, p) * du + p.lambda2 * u + b / (u * u * u);
}

double cosh_weight(double b, double c, double c_u, double c_v) {
  const double r2 = (c_u / c_v) * (c_u / c_v);
  return b / r2 + c * r2;
}

double invariant_via_factorization(const FactorizedPair& f) {
  const double r2 = (f.c_u / f.c_v) * (f.c_u / f.c_v);
  const double d = f.phi1 - f.psi1;
  const double v2 = f.v * f.v;
  return f.theta * f.theta * v2 * v2 * d * d - f.b / r2 * std::exp(-2.0 * f.integral_diff) -
         f.c * r2 * std::exp(2.0 * f.integral_diff);
}

oracle::ValidationReport invariant_recovery(const std::function<double(double)>& theta, double b,
                                            double c, double expected, oracle::Window phases,
                                            std::size_t samples, double tolerance) {
  oracle::ValidationReport report;
  report.check = "invariant-recovery";
  report.tolerance = tolerance;
  const double step = (phases.hi - phases.lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = phases.lo + step * static_cast<double>(i);
    try {
      const double t = theta(x);
      if (!std::isfinite(t) || std::abs(t) < oracle::kAmplitudeGuard) {
        ++report.skipped;
        continue;
      }
      // theta' from (theta^2)' / (2 theta): theta^2 stays smooth where theta
      // itself has a square-root turning point.
      auto square = [&](double y) {
        const double ty = theta(y);
        return ty * ty;
      };
      const double dt = oracle::derivative(square, x, 1) / (2.0 * t);
      report.record(x, invariant_from_theta(t, dt, b, c) - expected);
    } catch (const Error&) {
      ++report.skipped;
    }
  }
  report.finalize();
  return report;
}

oracle::ValidationReport invariant_is_c1_check(const EPParams& p, double b, double gamma,
                                               double tolerance) {
  (void)gamma;  // v_gamma drops out of the theta-only form
  const ThetaConstants k{p.c1, b, p.c};
  auto theta = [&](double x) { return real_or_nan(principal_sqrt(theta_squared(k, x, p.sign))); };
  // One period of the oscillatory branch. The other two are real only away
  // from the origin (past sqrt(b)/I, or once sinh dominates), so their spans
  // reach well beyond that.
  double span = 1.0;
  switch (theta_branch(p.c)) {
    case ThetaBranch::Oscillatory: span = std::numbers::pi / std::sqrt(-p.c); break;
    case ThetaBranch::Hyperbolic: span = std::max(1.0, 2.0 / std::sqrt(p.c)); break;
    case ThetaBranch::Algebraic:
      span = 2.0 * std::max(1.0, std::sqrt(std::abs(b)) / std::abs(p.c1));
      break;
  }
  auto report = invariant_recovery(theta, b, p.c, p.c1, {-span, span}, 201, tolerance);
  report.check = "invariant-is-c1";
  return report;
}

oracle::ValidationReport theorem_invariant_report(const GeneralSolutionU& u, const EPParams& p,
                                                  double b, oracle::Window window,
                                                  std::size_t samples, double tolerance) {
  auto ur = [&](double z) { return real_or_nan(u(z)); };
  auto vr = [&](double z) { return u.amplitude().real_value(z); };
  oracle::ValidationReport report;
  report.check = "theorem-invariant";
  report.tolerance = tolerance;
  const double step = (window.hi - window.lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = window.lo + step * static_cast<double>(i);
    try {
      const double uv = ur(z);
      const double vv = vr(z);
      if (!std::isfinite(uv) || !std::isfinite(vv) || std::abs(uv) < oracle::kAmplitudeGuard ||
          std::abs(vv) < oracle::kAmplitudeGuard) {
        ++report.skipped;
        continue;
      }
      // Differentiate the squares, which stay smooth through turning points.
      auto u2 = [&](double y) { return std::pow(ur(y), 2); };
      auto v2 = [&](double y) { return u.amplitude().square(y).real(); };
      const double du = oracle::derivative(u2, z, 1) / (2.0 * uv);
      const double dv = oracle::derivative(v2, z, 1) / (2.0 * vv);
      const ErmakovPairState s{uv, du, vv, dv, b, p.c};
      report.record(z, ermakov_invariant(s) - p.c1);
    } catch (const Error&) {
      ++report.skipped;
    }
  }
  report.finalize();
  return report;
}

oracle::ValidationReport theorem_residual_report(const GeneralSolutionU& u, const EPParams& p,
                                                 double b, oracle::Window window,
                                                 std::size_t samples, double tolerance) {
  auto ur = [&](double z) { return real_or_nan(u(z)); };
  oracle::ScanOptions opts;
  // v_gamma is a solution with the printed root only while v_gamma^2 grows;
  // elsewhere the construction is not even defined on the principal sheet.
  opts.skip = [&](double z, double uv, double) {
    return u.amplitude().square_slope(z) <= 0.0 || in_radicand_guard(uv, p);
  };
  auto residual = [&](double, double uv, double du, double d2u) {
    return gen_ermakov_residual(p, b, uv, du, d2u);
  };
  return oracle::residual_scan("theorem-residual", ur, residual, window, samples, tolerance, opts);
}

PairDrift ermakov_pair_drift(const PairIVP& ivp, std::size_t samples, double tolerance) {
  const double b = ivp.start.b;
  const double c = ivp.start.c;
  const double l2 = ivp.lambda2;
  const bool damped = ivp.damped;
  const EPParams gp = ivp.damping;
  oracle::IVPProblem prob;
  prob.rhs = [=](double, const oracle::State& y) {
    const double u = y[0], du = y[1], v = y[2], dv = y[3];
    if (u == 0.0 || v == 0.0) throw SingularityError("pair: amplitude vanished");
    const double gu = damped ? chiellini::g_lambda(u, gp) : 0.0;
    const double gv = damped ? chiellini::g_lambda(v, gp) : 0.0;
    return oracle::State{du, -gu * du - l2 * u - b / (u * u * u), dv,
                         -gv * dv - l2 * v - c / (v * v * v)};
  };
  prob.y0 = {ivp.start.u, ivp.start.u_dot, ivp.start.v, ivp.start.v_dot};
  prob.zeta_a = ivp.zeta_a;
  prob.zeta_b = ivp.zeta_b;
  prob.rel_tol = ivp.rel_tol;
  prob.abs_tol = ivp.abs_tol;

  PairDrift out;
  out.trajectory = oracle::integrate_ivp(prob);
  out.initial_invariant = ermakov_invariant(ivp.start);
  auto& report = out.report;
  report.check = damped ? "pair-drift-damped" : "pair-drift-undamped";
  report.tolerance = tolerance;
  const double lo = out.trajectory.start();
  const double hi = out.trajectory.reached();
  for (std::size_t i = 0; i < samples; ++i) {
    const double z = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto y = out.trajectory(z);
    const ErmakovPairState s{y[0], y[1], y[2], y[3], b, c};
    report.record(z, ermakov_invariant(s) - out.initial_invariant);
  }
  report.finalize();
  if (!out.trajectory.completed()) {
    report.passed = false;
    std::ostringstream msg;
    msg << "integration stopped at zeta = " << hi << " ("
        << oracle::to_string(out.trajectory.status()) << ")";
    report.note = msg.str();
  }
  return out;
}

}  // namespace eplab::invariant
