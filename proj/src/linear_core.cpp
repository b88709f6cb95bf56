#include "eplab/linear_core.hpp"

#include <cmath>
#include <string>

#include "eplab/errors.hpp"

namespace eplab::linear {

const char* to_string(Branch branch) {
  switch (branch) {
    case Branch::Negative: return "neg";
    case Branch::Zero: return "zero";
    case Branch::Positive: return "pos";
  }
  return "?";
}

Branch branch_of(double lambda2) {
  if (lambda2 > 0.0) return Branch::Positive;
  if (lambda2 < 0.0) return Branch::Negative;
  return Branch::Zero;
}

LinearBasis::LinearBasis(Branch branch, double lambda) : branch_(branch), lambda_(lambda) {
  if (branch_ == Branch::Zero) {
    lambda_ = 0.0;
    wronskian_ = 1.0;
    return;
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("make_basis: lambda must be positive on a nonzero branch");
  }
  wronskian_ = lambda;
}

double LinearBasis::h() const {
  switch (branch_) {
    case Branch::Positive: return lambda_ * lambda_;
    case Branch::Negative: return -lambda_ * lambda_;
    case Branch::Zero: break;
  }
  return 0.0;
}

double LinearBasis::u1(double z) const {
  switch (branch_) {
    case Branch::Positive: return std::cos(lambda_ * z);
    case Branch::Negative: return std::cosh(lambda_ * z);
    case Branch::Zero: break;
  }
  return 1.0;
}

double LinearBasis::u2(double z) const {
  switch (branch_) {
    case Branch::Positive: return std::sin(lambda_ * z);
    case Branch::Negative: return std::sinh(lambda_ * z);
    case Branch::Zero: break;
  }
  return z;
}

double LinearBasis::du1(double z) const {
  switch (branch_) {
    case Branch::Positive: return -lambda_ * std::sin(lambda_ * z);
    case Branch::Negative: return lambda_ * std::sinh(lambda_ * z);
    case Branch::Zero: break;
  }
  return 0.0;
}

double LinearBasis::du2(double z) const {
  switch (branch_) {
    case Branch::Positive: return lambda_ * std::cos(lambda_ * z);
    case Branch::Negative: return lambda_ * std::cosh(lambda_ * z);
    case Branch::Zero: break;
  }
  return 1.0;
}

LinearBasis make_basis(Branch branch, double lambda) { return LinearBasis(branch, lambda); }

ComplexValue pinney_particular(const LinearBasis& basis, double c, double zeta) {
  const double u1 = basis.u1(zeta);
  const double u2 = basis.u2(zeta);
  const double w = basis.wronskian();
  return principal_sqrt(u1 * u1 - c * u2 * u2 / (w * w));
}

PinneySolution::PinneySolution(LinearBasis basis, PinneyCoeffs coeffs)
    : basis_(basis), coeffs_(coeffs) {
  const double w = basis_.wronskian();
  const double lhs = coeffs_.alpha1 * coeffs_.alpha2 - coeffs_.alpha3 * coeffs_.alpha3;
  const double rhs = -coeffs_.c / (w * w);
  if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(rhs))) {
    throw ConstraintViolation("pinney_general: alpha1*alpha2 - alpha3^2 must equal -c/W^2 (got " +
                              std::to_string(lhs) + ", expected " + std::to_string(rhs) + ")");
  }
}

ComplexValue PinneySolution::operator()(double zeta) const {
  const double u1 = basis_.u1(zeta);
  const double u2 = basis_.u2(zeta);
  return principal_sqrt(coeffs_.alpha1 * u1 * u1 + coeffs_.alpha2 * u2 * u2 +
                        2.0 * coeffs_.alpha3 * u1 * u2);
}

double sep_square(Branch branch, double lambda, double c, double zeta) {
  // Where v^2 has zeros it is written as a product through
  // sin^2 a - sin^2 b = sin(a - b) sin(a + b) (and the sinh analogue), so it
  // stays accurate relative to itself next to them.
  switch (branch) {
    case Branch::Negative: {
      if (!(lambda > 0.0)) throw InvalidParameter("sep_solution: lambda must be positive");
      const double k = 1.0 - c / (lambda * lambda);
      const double x = lambda * zeta;
      if (k < 0.0) {
        const double x0 = std::asinh(1.0 / std::sqrt(-k));
        return -k * std::sinh(x0 - x) * std::sinh(x0 + x);
      }
      const double s = std::sinh(x);
      return 1.0 + k * s * s;
    }
    case Branch::Zero:
      if (c > 0.0) {
        const double z0 = 1.0 / std::sqrt(c);
        return c * (z0 - zeta) * (z0 + zeta);
      }
      return 1.0 - c * zeta * zeta;
    case Branch::Positive: {
      if (!(lambda > 0.0)) throw InvalidParameter("sep_solution: lambda must be positive");
      const double k = 1.0 + c / (lambda * lambda);
      const double x = lambda * zeta;
      if (k >= 1.0) {
        const double x0 = std::asin(1.0 / std::sqrt(k));
        return k * std::sin(x0 - x) * std::sin(x0 + x);
      }
      const double s = std::sin(x);
      return 1.0 - k * s * s;
    }
  }
  return 0.0;
}

ComplexValue sep_solution(Branch branch, double lambda, double c, double zeta) {
  return principal_sqrt(sep_square(branch, lambda, c, zeta));
}

double sep_residual(double h, double c, double v, double d2v) {
  if (v == 0.0) throw SingularityError("sep_residual: v = 0");
  return d2v + h * v + c / (v * v * v);
}

}  // namespace eplab::linear
