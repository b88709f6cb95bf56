#pragma once

// Constant-coefficient linear oscillator u'' + h u = 0 (h = lambda^2, 0,
// -lambda^2) and the Pinney superposition for v'' + h v + c v^-3 = 0.

#include "eplab/complex.hpp"

namespace eplab::linear {

/// Sign of the frequency term h.
enum class Branch { Negative, Zero, Positive };

const char* to_string(Branch branch);

/// Branch of lambda2 by sign.
Branch branch_of(double lambda2);

/// Basis (u1, u2) of u'' + h u = 0 with u1(0) = 1, u1'(0) = 0, u2(0) = 0,
/// u2'(0) = 1 up to scaling:
///   Positive: (cos lz, sin lz), W = l
///   Zero:     (1, z),           W = 1
///   Negative: (cosh lz, sinh lz), W = l
class LinearBasis {
 public:
  LinearBasis(Branch branch, double lambda);

  Branch branch() const { return branch_; }
  double lambda() const { return lambda_; }
  /// The constant h in u'' + h u = 0.
  double h() const;

  double u1(double zeta) const;
  double u2(double zeta) const;
  double du1(double zeta) const;
  double du2(double zeta) const;
  double wronskian() const { return wronskian_; }

 private:
  Branch branch_;
  double lambda_;
  double wronskian_;
};

/// Throws InvalidParameter when lambda <= 0 on a nonzero branch.
LinearBasis make_basis(Branch branch, double lambda);

/// sqrt(u1^2 - c u2^2 / W^2), principal root for negative radicands.
ComplexValue pinney_particular(const LinearBasis& basis, double c, double zeta);

struct PinneyCoeffs {
  double alpha1 = 1.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double c = 0.0;
};

/// v = (a1 u1^2 + a2 u2^2 + 2 a3 u1 u2)^(1/2), the general solution of
/// v'' + h v + c v^-3 = 0. The coefficients must satisfy
/// a1 a2 - a3^2 = -c / W^2.
class PinneySolution {
 public:
  /// Throws ConstraintViolation when the coefficient constraint fails.
  PinneySolution(LinearBasis basis, PinneyCoeffs coeffs);

  ComplexValue operator()(double zeta) const;
  const PinneyCoeffs& coeffs() const { return coeffs_; }

 private:
  LinearBasis basis_;
  PinneyCoeffs coeffs_;
};

inline PinneySolution pinney_general(const LinearBasis& basis, const PinneyCoeffs& coeffs) {
  return PinneySolution(basis, coeffs);
}

/// Closed forms v~-, v~0, v~+ of the undamped equation with v(0) = 1 and
/// v'(0) = 0. `lambda` is |lambda| (ignored on the Zero branch).
ComplexValue sep_solution(Branch branch, double lambda, double c, double zeta);

/// The square v^2 of sep_solution (real for every zeta).
double sep_square(Branch branch, double lambda, double c, double zeta);

/// Residual v'' + h v + c v^-3.
double sep_residual(double h, double c, double v, double d2v);

}  // namespace eplab::linear
