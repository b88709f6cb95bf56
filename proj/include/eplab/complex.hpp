#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace eplab {

/// Solution amplitudes may turn pure imaginary, so closed forms return this.
using ComplexValue = std::complex<double>;

/// Principal square root of a real number: i*sqrt(|x|) for x < 0.
inline ComplexValue principal_sqrt(double x) {
  if (x >= 0.0) return {std::sqrt(x), 0.0};
  return {0.0, std::sqrt(-x)};
}

/// Principal m-th root via the polar form, argument taken in (-pi, pi].
inline ComplexValue principal_root(ComplexValue z, int m) {
  const double r = std::abs(z);
  if (r == 0.0) return {0.0, 0.0};
  double arg = std::arg(z);
  if (arg == -std::numbers::pi) arg = std::numbers::pi;
  return std::polar(std::pow(r, 1.0 / m), arg / m);
}

inline ComplexValue principal_root(double x, int m) {
  return principal_root(ComplexValue{x, 0.0}, m);
}

inline ComplexValue principal_sqrt(ComplexValue z) {
  // A signed zero imaginary part must not flip the root below the axis.
  if (z.imag() == 0.0) return principal_sqrt(z.real());
  return std::sqrt(z);
}

/// True when the value is real to within `tol` relative to its modulus.
inline bool is_real(ComplexValue z, double tol = 1e-12) {
  return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z));
}

}  // namespace eplab
