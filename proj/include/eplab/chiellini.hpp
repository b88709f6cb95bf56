#pragma once

// Ermakov-Pinney equation with Chiellini dissipation:
//
//   v'' + g(v) v' + h(v) = 0,   h(v) = lambda^2 v + c v^-3,
//   g(v) = (lambda^2 v^2 + c v^-2) / sqrt(k lambda^2 v^4 + c1 v^2 - k c),
//
// where g solves d/dv(h/g) = k g. The closed forms below hold for k = -2.

#include <functional>
#include <utility>

#include "eplab/complex.hpp"
#include "eplab/linear_core.hpp"

namespace eplab::chiellini {

using linear::Branch;

/// Which of the stacked +/- (or -/+) symbols is taken: Plus is the upper one.
enum class Sign { Plus, Minus };

inline double sign_value(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }
const char* to_string(Sign s);

struct EPParams {
  double lambda2 = 0.25;  // any sign
  double c = 1.0;         // inverse-cube strength
  double c1 = 1.0;        // integration constant of the Abel quadrature
  double k = -2.0;        // Chiellini constant, nonzero
  double zeta0 = 0.0;
  Sign sign = Sign::Plus;

  Branch branch() const { return linear::branch_of(lambda2); }
};

/// lambda^2 v + c v^-3. Throws SingularityError at v = 0.
double h_lambda(double v, const EPParams& p);

/// k lambda^2 v^4 + c1 v^2 - k c.
double radicand(double v, const EPParams& p);
/// Same radicand written in w = v^2 (real even when v is imaginary).
double radicand_w(double w, const EPParams& p);

/// Chiellini damping with the positive root. Throws DomainError when the
/// radicand is not positive and SingularityError at v = 0.
double g_lambda(double v, const EPParams& p);

/// g expressed through w = v^2; lets g be sampled along solutions that turn
/// pure imaginary (w < 0). NaN where the radicand is negative or w = 0.
double g_of_square(double w, const EPParams& p);

/// c = 0 damping with the removable singularity at v = 0 taken out:
/// lambda^2 v / sqrt(c1 - 2 lambda^2 v^2). Requires k = -2.
double g_reduced(double v, const EPParams& p);

/// d/dv(h/g) - k g with the derivative from oracle::derivative. `g` defaults
/// to g_lambda; a replacement lets the test perturb it.
double chiellini_residual(double v, const EPParams& p,
                          const std::function<double(double)>& g = {});

/// eta = dv/dzeta = sqrt(-2 lambda^2 v^4 + c1 v^2 + 2c) / v along solutions
/// (k = -2 only). Throws DomainError for a negative radicand.
double abel_eta(double v, const EPParams& p);

/// Residual v'' + g(v) v' + h(v) with the principal-root g.
double dissipative_residual(const EPParams& p, double v, double dv, double d2v);

/// General solution v-, v0 or v+ (branch by the sign of lambda^2), k = -2.
class DissipativeSolution {
 public:
  /// Throws InvalidParameter for k != -2 or c1 = 0 on the Zero branch.
  explicit DissipativeSolution(const EPParams& p);

  /// w(zeta) = v(zeta)^2; complex only if the amplitude radicand is negative.
  ComplexValue square(double zeta) const;
  ComplexValue operator()(double zeta) const { return principal_sqrt(square(zeta)); }
  /// dw/dzeta; the closed form satisfies the equation with the printed g
  /// where this is positive (v real).
  double square_slope(double zeta) const;

  /// Real part of v when v is real and finite, NaN otherwise.
  double real_value(double zeta) const;

  const EPParams& params() const { return p_; }

 private:
  EPParams p_;
  double scale_ = 0.0;      // 2 sqrt(2) |lambda|
  ComplexValue amp_;        // sqrt(16 lambda~^2 c -/+ c1^2)/(4 lambda~^2) with sign
  double offset_ = 0.0;     // +-c1/(4 lambda~^2)
  bool product_form_ = false;
  double root_ = 0.0;       // x0 with w(x0) = 0 (t0 on the Zero branch)
};

inline DissipativeSolution general_solution_v(const EPParams& p) { return DissipativeSolution(p); }

/// zeta0 = 0, c1 = gamma specialization.
DissipativeSolution particular_vgamma(double gamma, const EPParams& p);

/// Harmonic solutions of the c = 0 equation; amplitude sqrt(c1)/(sqrt(2) lambda).
struct HarmonicPair {
  double amplitude = 0.0;
  double frequency = 0.0;  // sqrt(2) lambda
  double v1(double zeta) const;  // sine mode
  double v2(double zeta) const;  // cosine mode
  double dv1(double zeta) const;
  double dv2(double zeta) const;
};

/// Throws InvalidParameter unless lambda > 0 and c1 > 0.
HarmonicPair reduced_harmonic(double c1, double lambda);

}  // namespace eplab::chiellini
