#pragma once

// Second-order autonomous ODEs
//   u'' + f2(u) u' + f3(u) + f1(u) u'^2 + f0(u) u'^3 = 0
// and the Abel equation dy/du = f0 + f1 y + f2 y^2 + f3 y^3 obtained with
// du/dzeta = eta(u), y = 1/eta. Also the factorization
//   (d/dzeta - Phi2)(d/dzeta - Phi1) u = 0
// of the dissipative equation with a constant inverse-cube strength.

#include <functional>

#include "eplab/chiellini.hpp"
#include "eplab/oracle.hpp"

namespace eplab::abel {

using chiellini::EPParams;
using Coefficient = std::function<double(double)>;

struct GeneralODECoeffs {
  Coefficient f0;
  Coefficient f1;
  Coefficient f2;
  Coefficient f3;
};

/// Zero coefficient functions.
GeneralODECoeffs zero_coeffs();

/// f0 = f1 = 0, f2 = g, f3 = h of the dissipative equation.
GeneralODECoeffs dissipative_coeffs(const EPParams& p);

using AbelRhs = std::function<double(double u, double y)>;

/// (u, y) -> f0 + f1 y + f2 y^2 + f3 y^3. Empty coefficients count as zero.
AbelRhs to_abel_rhs(const GeneralODECoeffs& coeffs);

/// First-order system for the state (u, u') of the second-order equation.
oracle::Rhs second_order_rhs(const GeneralODECoeffs& coeffs);

/// Abel equation without the linear term. With F(u) = int_{u_ref}^u f1,
/// y^ = y e^{-F} solves dy^/du = f0 e^{-F} + f2 e^{F} y^2 + f3 e^{2F} y^3.
struct LinearTermRemoved {
  Coefficient f0_hat;
  Coefficient f2_hat;
  Coefficient f3_hat;
  Coefficient exponent;  // F(u)

  /// y^ from y at u.
  double forward(double u, double y) const;
  /// y from y^ at u.
  double backward(double u, double y_hat) const;
  AbelRhs rhs() const;
};

/// F is obtained by adaptive quadrature from u_ref; NonConvergence or
/// DomainError from the quadrature propagate at evaluation time.
LinearTermRemoved remove_linear_term(const GeneralODECoeffs& coeffs, double u_ref = 0.0,
                                     double tol = 1e-12);

struct PhiPair {
  double phi1 = 0.0;  // sqrt(-2 l^2 v^4 + c1 v^2 + 2c) / v^2
  double phi2 = 0.0;  // the damping g
};

/// Throws DomainError when the radicand is not positive, SingularityError at
/// v = 0 and InvalidParameter for k != -2.
PhiPair phi_functions(double v, const EPParams& p);

/// d Phi1 / dv, differentiated analytically.
double dphi1_dv(double v, const EPParams& p);

/// g + Phi1 + Phi2 + v dPhi1/dv (zero for the factorized equation).
double factorization_g_residual(double v, const EPParams& p);
/// h - Phi1 Phi2 v.
double factorization_h_residual(double v, const EPParams& p);

/// Integrates u' = phi1(u) u from u(zeta_a) = u_init. A turning point of the
/// radicand shows up as a non-completed trajectory, not an exception.
oracle::Trajectory first_factor_solution(const Coefficient& phi1, double u_init,
                                         oracle::Window span, double rel_tol = 1e-11,
                                         double abs_tol = 1e-13);

/// Same with Phi1 of the dissipative equation.
oracle::Trajectory first_factor_solution(const EPParams& p, double v_init, oracle::Window span,
                                         double rel_tol = 1e-11, double abs_tol = 1e-13);

/// Second-order IVP for (u, u') from the given initial data.
oracle::Trajectory second_order_solution(const GeneralODECoeffs& coeffs, double u0, double du0,
                                         oracle::Window span, double rel_tol = 1e-11,
                                         double abs_tol = 1e-13);

/// Abel route: integrate the Abel equation in u over [u0, u1] from
/// y(u0) = 1/du0, then du/dzeta = 1/y(u) in zeta from u0. The result has a
/// single state component u. u1 bounds the monotone segment.
struct AbelRoute {
  oracle::Trajectory abel;  // y(u)
  oracle::Trajectory path;  // u(zeta)
};

AbelRoute abel_route_solution(const GeneralODECoeffs& coeffs, double u0, double du0, double u1,
                              oracle::Window span, double rel_tol = 1e-11, double abs_tol = 1e-13);

}  // namespace eplab::abel
