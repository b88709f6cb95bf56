#include "eplab/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eplab/errors.hpp"

namespace eplab::specfun {
namespace {

using real = long double;

constexpr int kMaxTerms = 100000;
constexpr int kQuietTerms = 3;
constexpr real kSeriesTol = 1e-18L;

bool is_nonpositive_integer(real x) { return x <= 0 && std::floor(x) == x; }

bool is_integer(real x, real tol = 1e-13L) {
  return std::fabs(x - std::nearbyint(x)) <= tol * std::max<real>(1, std::fabs(x));
}

real rgamma_l(real x) {
  if (is_nonpositive_integer(x)) return 0;
  return 1 / std::tgamma(x);
}

// Plain Gauss series; caller guarantees |z| <= 1/2 or a terminating series.
real series(real a, real b, real c, real z) {
  real term = 1;
  real sum = 1;
  int quiet = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
    sum += term;
    if (term == 0) return sum;
    if (std::fabs(term) < kSeriesTol * std::fabs(sum)) {
      if (++quiet == kQuietTerms) return sum;
    } else {
      quiet = 0;
    }
  }
  throw NonConvergence("hyp2f1: series did not converge within " +
                       std::to_string(kMaxTerms) + " terms");
}

// 1/2 < z < 1, c - a - b not an integer.
real connection(real a, real b, real c, real z) {
  const real s = c - a - b;
  if (is_integer(s)) {
    throw DegenerateParameters("hyp2f1: c-a-b is an integer; the 1-z connection is logarithmic");
  }
  const real w = 1 - z;
  const real gc = std::tgamma(c);
  const real t1 = gc * std::tgamma(s) * rgamma_l(c - a) * rgamma_l(c - b);
  const real t2 = gc * std::tgamma(-s) * rgamma_l(a) * rgamma_l(b);
  real out = 0;
  if (t1 != 0) out += t1 * series(a, b, 1 - s, w);
  if (t2 != 0) out += t2 * std::pow(w, s) * series(c - a, c - b, 1 + s, w);
  return out;
}

real dispatch(real a, real b, real c, real z) {
  if (z == 0) return 1;
  if (std::fabs(z) <= 0.5L) return series(a, b, c, z);
  if (z > 0.5L) return connection(a, b, c, z);

  // z < -1/2: Pfaff to w = z/(z-1) in (1/3, 1).
  const real w = z / (z - 1);
  if (w <= 0.5L) return std::pow(1 - z, -a) * series(a, c - b, c, w);
  if (!is_integer(b - a)) return std::pow(1 - z, -a) * connection(a, c - b, c, w);
  throw DegenerateParameters("hyp2f1: b-a is an integer; no logarithm-free path for z < -1");
}

}  // namespace

double rgamma(double x) { return static_cast<double>(rgamma_l(x)); }

double hyp2f1(const Hyp2F1Args& args) {
  const real a = args.a;
  const real b = args.b;
  const real c = args.c;
  const real z = args.z;
  if (!std::isfinite(args.a) || !std::isfinite(args.b) || !std::isfinite(args.c) ||
      std::isnan(args.z)) {
    throw InvalidParameter("hyp2f1: non-finite argument");
  }
  if (is_nonpositive_integer(c)) {
    throw InvalidParameter("hyp2f1: c is a non-positive integer");
  }
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return static_cast<double>(series(a, b, c, z));
  }
  if (z >= 1) {
    const real s = c - a - b;
    if (z == 1 && s > 0) {
      // Gauss summation.
      return static_cast<double>(std::tgamma(c) * std::tgamma(s) * rgamma_l(c - a) *
                                 rgamma_l(c - b));
    }
    throw DivergenceError("hyp2f1: series diverges for z >= 1");
  }
  return static_cast<double>(dispatch(a, b, c, z));
}

}  // namespace eplab::specfun
