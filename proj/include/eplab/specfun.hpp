#pragma once

// Gauss hypergeometric function 2F1 on the real line, z < 1.

namespace eplab::specfun {

struct Hyp2F1Args {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;  // not a non-positive integer
  double z = 0.0;  // z < 1 (z == 1 only when c - a - b > 0)
};

/// Relative accuracy is ~1e-12 for |z| <= 1/2 and ~1e-10 elsewhere.
///
/// Regions: |z| <= 1/2 direct series; z < -1/2 Pfaff transformation
/// z -> z/(z-1), followed by the 1-z connection when the image exceeds 1/2;
/// 1/2 < z < 1 the 1-z connection formula.
///
/// Throws InvalidParameter (c a non-positive integer), DivergenceError
/// (z > 1, or z == 1 with c-a-b <= 0), DegenerateParameters (connection
/// formula needed with an integer exponent difference) and NonConvergence.
double hyp2f1(const Hyp2F1Args& args);

inline double hyp2f1(double a, double b, double c, double z) {
  return hyp2f1(Hyp2F1Args{a, b, c, z});
}

/// 1/Gamma(x), zero at the poles of Gamma.
double rgamma(double x);

}  // namespace eplab::specfun
