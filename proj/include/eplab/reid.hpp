#pragma once

// Reid nonlinearities: v'' + h v = q_m v^{-(2m-1)} with q_m = c~ (u1 u2)^{m-2},
// the exponential/algebraic/trigonometric solutions v_m, their Milne phases
// in terms of 2F1, and the amplitude-phase solutions u = theta(Theta) v_m.

#include <string>

#include "eplab/chiellini.hpp"
#include "eplab/complex.hpp"
#include "eplab/invariant_theorem.hpp"
#include "eplab/linear_core.hpp"

namespace eplab::reid {

using linear::Branch;

struct ReidParams {
  int m = 2;
  Branch branch = Branch::Positive;
  double lambda = 0.5;  // |lambda|, unused on the Zero branch
  double a_amp = 1.0;
  double b_amp = 1.0;   // cancels from A and B
  double c_tilde = 1.0;

  /// a^m
  double A() const;
  /// c~ / (4 lambda^2 a^m (m - 1))
  double B() const;
  /// c~ / (m - 1)
  double B0() const;
};

/// Throws InvalidParameter for m < 2, or lambda <= 0 off the Zero branch.
void validate(const ReidParams& rp);

/// c~ (u1 u2)^{m-2}.
double q_m(double u1, double u2, const ReidParams& rp);

/// (u1^m + c~ u2^m / ((m-1) W^2))^{1/m}, principal m-th root.
ComplexValue reid_general(const linear::LinearBasis& basis, const ReidParams& rp, double zeta);

/// The m-th power u1^m + c~ u2^m / ((m-1) W^2) under the root of reid_general.
double reid_power(const linear::LinearBasis& basis, const ReidParams& rp, double zeta);

/// Residual v'' + h v - q v^{1-2m}.
double reid_residual(double h, double q, int m, double v, double d2v);

/// The printed solutions
///   Negative: (A e^{m l z} + B e^{-m l z})^{1/m}
///   Zero:     (1 + B0 z^m)^{1/m}
///   Positive: (A cos m l z + B sin m l z)^{1/m}
ComplexValue v_m(const ReidParams& rp, double zeta);

enum class PhaseMethod { ClosedForm, QuadratureFallback };

struct PhaseEvaluation {
  double value = 0.0;
  PhaseMethod method = PhaseMethod::ClosedForm;
  double reference_zeta = 0.0;  // anchor of the fallback quadrature
};

/// Closed-form 2F1 antiderivative of v_m^-2 (exactly the printed expressions,
/// so Theta_0(0) = 0 but Theta_-(0) and Theta_+(0) are not zero).
/// Throws DegenerateParameters where 2F1 hits the logarithmic case.
double theta_m_closed(const ReidParams& rp, double zeta);

/// theta_m_closed when available; otherwise the closed form at a reference
/// point where 2F1 is evaluated by its series plus the quadrature of
/// Re(v_m^-2) from there.
PhaseEvaluation theta_m_detailed(const ReidParams& rp, double zeta);

inline double theta_m(const ReidParams& rp, double zeta) {
  return theta_m_detailed(rp, zeta).value;
}

/// Quadrature of Re(v_m^-2) between two points (the independent oracle).
double phase_quadrature(const ReidParams& rp, double from, double to, double tol = 1e-12);

/// u = theta(Theta_m(zeta)) v_m(zeta), theta from the separable theta equation
/// with constants k. The phase enters without an offset.
ComplexValue u_m(const ReidParams& rp, const invariant::ThetaConstants& k, chiellini::Sign sign,
                 double zeta);

/// Constants (I, b, c) that reproduce the amplitude-phase factors of the
/// unity-parameter solutions: Negative (1, 2, 1/2), Zero (1, 1, 0),
/// Positive (1, 2, -1/2).
invariant::ThetaConstants unity_theta_constants(Branch branch);

/// Unity parameters with lambda = 1/2 on the given branch and order.
ReidParams unity_params(Branch branch, int m);

/// The elementary m = 2 forms, lambda = 1/2 and unity constants. `upper`
/// selects the upper of the stacked signs as printed.
ComplexValue u_m2_elementary(Branch branch, bool upper, double zeta);

}  // namespace eplab::reid
