#include "eplab/chiellini.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eplab/errors.hpp"
#include "eplab/oracle.hpp"

namespace eplab::chiellini {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_k_minus_two(const EPParams& p, const char* who) {
  if (p.k != -2.0) {
    std::ostringstream msg;
    msg << who << ": closed forms exist only for k = -2 (got k = " << p.k << ")";
    throw InvalidParameter(msg.str());
  }
}

}  // namespace

const char* to_string(Sign s) { return s == Sign::Plus ? "plus" : "minus"; }

double h_lambda(double v, const EPParams& p) {
  if (v == 0.0) throw SingularityError("h_lambda: v = 0");
  return p.lambda2 * v + p.c / (v * v * v);
}

double radicand(double v, const EPParams& p) { return radicand_w(v * v, p); }

double radicand_w(double w, const EPParams& p) {
  return p.k * p.lambda2 * w * w + p.c1 * w - p.k * p.c;
}

double g_lambda(double v, const EPParams& p) {
  if (v == 0.0) throw SingularityError("g_lambda: v = 0");
  const double r = radicand(v, p);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "g_lambda: radicand " << r << " is not positive at v = " << v;
    throw DomainError(msg.str());
  }
  const double w = v * v;
  return (p.lambda2 * w + p.c / w) / std::sqrt(r);
}

double g_of_square(double w, const EPParams& p) {
  const double r = radicand_w(w, p);
  if (!(r >= 0.0) || w == 0.0) return kNaN;
  return (p.lambda2 * w + p.c / w) / std::sqrt(r);
}

double g_reduced(double v, const EPParams& p) {
  require_k_minus_two(p, "g_reduced");
  const double r = p.c1 - 2.0 * p.lambda2 * v * v;
  if (!(r > 0.0)) throw DomainError("g_reduced: radicand is not positive");
  return p.lambda2 * v / std::sqrt(r);
}

double chiellini_residual(double v, const EPParams& p, const std::function<double(double)>& g) {
  auto gf = [&](double x) { return g ? g(x) : g_lambda(x, p); };
  auto ratio = [&](double x) {
    if (x == 0.0 || (x > 0.0) != (v > 0.0)) throw DomainError("chiellini_residual: stencil crosses v = 0");
    return h_lambda(x, p) / gf(x);
  };
  const double d = oracle::derivative(ratio, v, 1, 0.1 * std::abs(v));
  return d - p.k * gf(v);
}

double abel_eta(double v, const EPParams& p) {
  require_k_minus_two(p, "abel_eta");
  if (v == 0.0) throw SingularityError("abel_eta: v = 0");
  const double r = radicand(v, p);
  if (r < 0.0) throw DomainError("abel_eta: negative radicand");
  return std::sqrt(r) / v;
}

double dissipative_residual(const EPParams& p, double v, double dv, double d2v) {
  return d2v + g_lambda(v, p) * dv + h_lambda(v, p);
}

DissipativeSolution::DissipativeSolution(const EPParams& p) : p_(p) {
  require_k_minus_two(p_, "general_solution_v");
  const double s = sign_value(p_.sign);
  switch (p_.branch()) {
    case Branch::Positive: {
      const double l2 = p_.lambda2;
      scale_ = 2.0 * std::numbers::sqrt2 * std::sqrt(l2);
      offset_ = p_.c1 / (4.0 * l2);
      amp_ = s * principal_sqrt(16.0 * l2 * p_.c + p_.c1 * p_.c1) / (4.0 * l2);
      break;
    }
    case Branch::Negative: {
      const double lt2 = -p_.lambda2;
      scale_ = 2.0 * std::numbers::sqrt2 * std::sqrt(lt2);
      offset_ = -p_.c1 / (4.0 * lt2);
      // Upper symbol of the stacked -/+ is the minus.
      amp_ = -s * principal_sqrt(16.0 * lt2 * p_.c - p_.c1 * p_.c1) / (4.0 * lt2);
      break;
    }
    case Branch::Zero:
      if (p_.c1 == 0.0) throw InvalidParameter("general_solution_v: c1 must be nonzero for lambda^2 = 0");
      break;
  }
  // Near a zero of w the sum offset + amp*f(x) cancels to a few digits, and
  // the derivative oracles see that noise divided by h^2. Rewriting it as
  // amp*(f(x) - f(x0)) through a sum-to-product identity keeps w accurate
  // relative to itself.
  switch (p_.branch()) {
    case Branch::Positive:
      if (amp_.imag() == 0.0 && amp_.real() != 0.0 && std::abs(offset_ / amp_.real()) <= 1.0) {
        root_ = std::asin(-offset_ / amp_.real());
        product_form_ = true;
      }
      break;
    case Branch::Negative:
      if (amp_.imag() == 0.0 && amp_.real() != 0.0) {
        root_ = std::asinh(-offset_ / amp_.real());
        product_form_ = true;
      }
      break;
    case Branch::Zero: {
      const double t0sq = 2.0 * p_.c / (p_.c1 * p_.c1);
      if (t0sq > 0.0) {
        root_ = std::sqrt(t0sq);
        product_form_ = true;
      }
      break;
    }
  }
}

ComplexValue DissipativeSolution::square(double zeta) const {
  const double t = zeta - p_.zeta0;
  if (product_form_) {
    const double x = scale_ * t;
    const double a = amp_.real();
    switch (p_.branch()) {
      case Branch::Positive:
        return 2.0 * a * std::cos(0.5 * (x + root_)) * std::sin(0.5 * (x - root_));
      case Branch::Negative:
        return 2.0 * a * std::cosh(0.5 * (x + root_)) * std::sinh(0.5 * (x - root_));
      case Branch::Zero: break;
    }
    return p_.c1 * (t - root_) * (t + root_);
  }
  switch (p_.branch()) {
    case Branch::Positive: return offset_ + amp_ * std::sin(scale_ * t);
    case Branch::Negative: return offset_ + amp_ * std::sinh(scale_ * t);
    case Branch::Zero: break;
  }
  return {p_.c1 * t * t - 2.0 * p_.c / p_.c1, 0.0};
}

double DissipativeSolution::square_slope(double zeta) const {
  const double t = zeta - p_.zeta0;
  switch (p_.branch()) {
    case Branch::Positive: return (amp_ * scale_ * std::cos(scale_ * t)).real();
    case Branch::Negative: return (amp_ * scale_ * std::cosh(scale_ * t)).real();
    case Branch::Zero: break;
  }
  return 2.0 * p_.c1 * t;
}

double DissipativeSolution::real_value(double zeta) const {
  const ComplexValue w = square(zeta);
  if (w.imag() != 0.0 || !(w.real() >= 0.0) || !std::isfinite(w.real())) return kNaN;
  return std::sqrt(w.real());
}

DissipativeSolution particular_vgamma(double gamma, const EPParams& p) {
  EPParams q = p;
  q.zeta0 = 0.0;
  q.c1 = gamma;
  return DissipativeSolution(q);
}

double HarmonicPair::v1(double zeta) const { return amplitude * std::sin(frequency * zeta); }
double HarmonicPair::v2(double zeta) const { return amplitude * std::cos(frequency * zeta); }
double HarmonicPair::dv1(double zeta) const {
  return amplitude * frequency * std::cos(frequency * zeta);
}
double HarmonicPair::dv2(double zeta) const {
  return -amplitude * frequency * std::sin(frequency * zeta);
}

HarmonicPair reduced_harmonic(double c1, double lambda) {
  if (!(lambda > 0.0) || !(c1 > 0.0)) {
    throw InvalidParameter("reduced_harmonic: need lambda > 0 and c1 > 0");
  }
  return {std::sqrt(c1) / (std::numbers::sqrt2 * lambda), std::numbers::sqrt2 * lambda};
}

}  // namespace eplab::chiellini
