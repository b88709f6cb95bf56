#include "eplab/abel_factor.hpp"

#include <cmath>
#include <memory>

#include "eplab/errors.hpp"

namespace eplab::abel {
namespace {

double eval(const Coefficient& f, double u) { return f ? f(u) : 0.0; }

void require_k_minus_two(const EPParams& p) {
  if (p.k != -2.0) throw InvalidParameter("factorization: only k = -2 is supported");
}

double sqrt_radicand(double v, const EPParams& p) {
  if (v == 0.0) throw SingularityError("phi_functions: v = 0");
  const double r = chiellini::radicand(v, p);
  if (!(r > 0.0)) throw DomainError("phi_functions: radicand is not positive");
  return std::sqrt(r);
}

}  // namespace

GeneralODECoeffs zero_coeffs() {
  auto zero = [](double) { return 0.0; };
  return {zero, zero, zero, zero};
}

GeneralODECoeffs dissipative_coeffs(const EPParams& p) {
  auto zero = [](double) { return 0.0; };
  return {zero, zero, [p](double u) { return chiellini::g_lambda(u, p); },
          [p](double u) { return chiellini::h_lambda(u, p); }};
}

AbelRhs to_abel_rhs(const GeneralODECoeffs& coeffs) {
  return [coeffs](double u, double y) {
    return eval(coeffs.f0, u) +
           y * (eval(coeffs.f1, u) + y * (eval(coeffs.f2, u) + y * eval(coeffs.f3, u)));
  };
}

oracle::Rhs second_order_rhs(const GeneralODECoeffs& coeffs) {
  return [coeffs](double, const oracle::State& s) {
    const double u = s[0], du = s[1];
    const double d2u = -(eval(coeffs.f2, u) * du + eval(coeffs.f3, u) +
                         eval(coeffs.f1, u) * du * du + eval(coeffs.f0, u) * du * du * du);
    return oracle::State{du, d2u};
  };
}

double LinearTermRemoved::forward(double u, double y) const { return y * std::exp(-exponent(u)); }

double LinearTermRemoved::backward(double u, double y_hat) const {
  return y_hat * std::exp(exponent(u));
}

AbelRhs LinearTermRemoved::rhs() const {
  return [f0 = f0_hat, f2 = f2_hat, f3 = f3_hat](double u, double y) {
    return f0(u) + y * y * (f2(u) + y * f3(u));
  };
}

LinearTermRemoved remove_linear_term(const GeneralODECoeffs& coeffs, double u_ref, double tol) {
  auto f1 = coeffs.f1;
  auto F = [f1, u_ref, tol](double u) {
    if (!f1 || u == u_ref) return 0.0;
    return oracle::integrate(f1, u_ref, u, tol).value;
  };
  LinearTermRemoved out;
  out.exponent = F;
  out.f0_hat = [f0 = coeffs.f0, F](double u) { return eval(f0, u) * std::exp(-F(u)); };
  out.f2_hat = [f2 = coeffs.f2, F](double u) { return eval(f2, u) * std::exp(F(u)); };
  out.f3_hat = [f3 = coeffs.f3, F](double u) { return eval(f3, u) * std::exp(2.0 * F(u)); };
  return out;
}

PhiPair phi_functions(double v, const EPParams& p) {
  require_k_minus_two(p);
  const double s = sqrt_radicand(v, p);
  return {s / (v * v), chiellini::g_lambda(v, p)};
}

double dphi1_dv(double v, const EPParams& p) {
  require_k_minus_two(p);
  const double s = sqrt_radicand(v, p);
  const double dr = -8.0 * p.lambda2 * v * v * v + 2.0 * p.c1 * v;
  return dr / (2.0 * s * v * v) - 2.0 * s / (v * v * v);
}

double factorization_g_residual(double v, const EPParams& p) {
  const PhiPair f = phi_functions(v, p);
  return chiellini::g_lambda(v, p) + f.phi1 + f.phi2 + v * dphi1_dv(v, p);
}

double factorization_h_residual(double v, const EPParams& p) {
  const PhiPair f = phi_functions(v, p);
  return chiellini::h_lambda(v, p) - f.phi1 * f.phi2 * v;
}

oracle::Trajectory first_factor_solution(const Coefficient& phi1, double u_init,
                                         oracle::Window span, double rel_tol, double abs_tol) {
  oracle::IVPProblem prob;
  prob.rhs = [phi1](double, const oracle::State& s) { return oracle::State{phi1(s[0]) * s[0]}; };
  prob.y0 = {u_init};
  prob.zeta_a = span.lo;
  prob.zeta_b = span.hi;
  prob.rel_tol = rel_tol;
  prob.abs_tol = abs_tol;
  return oracle::integrate_ivp(prob);
}

oracle::Trajectory first_factor_solution(const EPParams& p, double v_init, oracle::Window span,
                                         double rel_tol, double abs_tol) {
  require_k_minus_two(p);
  return first_factor_solution([p](double u) { return phi_functions(u, p).phi1; }, v_init, span,
                               rel_tol, abs_tol);
}

oracle::Trajectory second_order_solution(const GeneralODECoeffs& coeffs, double u0, double du0,
                                         oracle::Window span, double rel_tol, double abs_tol) {
  oracle::IVPProblem prob;
  prob.rhs = second_order_rhs(coeffs);
  prob.y0 = {u0, du0};
  prob.zeta_a = span.lo;
  prob.zeta_b = span.hi;
  prob.rel_tol = rel_tol;
  prob.abs_tol = abs_tol;
  return oracle::integrate_ivp(prob);
}

AbelRoute abel_route_solution(const GeneralODECoeffs& coeffs, double u0, double du0, double u1,
                              oracle::Window span, double rel_tol, double abs_tol) {
  if (du0 == 0.0) throw SingularityError("abel_route_solution: zero initial slope");
  AbelRoute out;
  const AbelRhs f = to_abel_rhs(coeffs);
  oracle::IVPProblem abel;
  abel.rhs = [f](double u, const oracle::State& y) { return oracle::State{f(u, y[0])}; };
  abel.y0 = {1.0 / du0};
  abel.zeta_a = u0;
  abel.zeta_b = u1;
  abel.rel_tol = rel_tol;
  abel.abs_tol = abs_tol;
  out.abel = oracle::integrate_ivp(abel);

  auto y_of_u = std::make_shared<oracle::Trajectory>(out.abel);
  oracle::IVPProblem path;
  path.rhs = [y_of_u](double, const oracle::State& s) {
    const double y = y_of_u->component(s[0], 0);
    if (y == 0.0) throw SingularityError("abel_route_solution: y = 0");
    return oracle::State{1.0 / y};
  };
  path.y0 = {u0};
  path.zeta_a = span.lo;
  path.zeta_b = span.hi;
  path.rel_tol = rel_tol;
  path.abs_tol = abs_tol;
  out.path = oracle::integrate_ivp(path);
  return out;
}

}  // namespace eplab::abel
