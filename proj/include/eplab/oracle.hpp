#pragma once

// Independent numerical machinery used to certify the closed forms:
// adaptive Runge-Kutta integration, adaptive Gauss-Kronrod quadrature,
// extrapolated finite differences and ODE residual scanning.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace eplab::oracle {

/// Amplitude guard band: residuals are not evaluated where |v| < this.
inline constexpr double kAmplitudeGuard = 1e-3;
/// Radicand guard band, scaled by max(1, c1^2) at the call sites.
inline constexpr double kRadicandGuard = 1e-6;

using State = std::vector<double>;
using RealFunction = std::function<double(double)>;
using Rhs = std::function<State(double, const State&)>;

// ---------------------------------------------------------------------------
// Initial value problems
// ---------------------------------------------------------------------------

struct IVPProblem {
  Rhs rhs;
  State y0;
  double zeta_a = 0.0;
  double zeta_b = 1.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::size_t max_steps = 2'000'000;
};

enum class IntegrationStatus {
  Completed,
  DomainBoundary,  // rhs stopped returning finite values
  StepUnderflow,   // error control could not be met (stiffness/singularity)
  StepLimit,
};

const char* to_string(IntegrationStatus status);

/// Accepted steps of a Dormand-Prince 5(4) run with 4th-order dense output.
class Trajectory {
 public:
  struct Segment {
    double zeta0 = 0.0;
    double h = 0.0;
    std::vector<State> coeffs;  // five interpolation vectors
  };

  Trajectory() = default;

  IntegrationStatus status() const { return status_; }
  bool completed() const { return status_ == IntegrationStatus::Completed; }
  const std::string& message() const { return message_; }
  double start() const { return nodes_.front(); }
  /// Furthest zeta reached (== zeta_b when completed).
  double reached() const { return nodes_.back(); }
  std::size_t steps() const { return segments_.size(); }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<State>& node_states() const { return states_; }

  /// Dense output; exact at nodes. Throws DomainError outside the covered span.
  State operator()(double zeta) const;
  double component(double zeta, std::size_t index) const { return (*this)(zeta).at(index); }

  bool covers(double zeta) const;

 private:
  friend Trajectory integrate_ivp(const IVPProblem& problem);

  std::vector<double> nodes_;
  std::vector<State> states_;
  std::vector<Segment> segments_;
  double direction_ = 1.0;
  IntegrationStatus status_ = IntegrationStatus::Completed;
  std::string message_;
};

/// Integrates from zeta_a to zeta_b (either direction). Never throws for a
/// rhs that leaves its domain; the returned trajectory reports how far it got.
Trajectory integrate_ivp(const IVPProblem& problem);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. Converged when the
/// summed error estimate is <= tol * max(1, |value|).
/// Throws NonConvergence after `max_intervals` bisections and DomainError
/// when the integrand is not finite.
QuadratureResult integrate(const RealFunction& f, double a, double b, double tol,
                           std::size_t max_intervals = 5000);

inline double adaptive_quadrature(const RealFunction& f, double a, double b, double tol) {
  return integrate(f, a, b, tol).value;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

/// Central differences with Ridders' extrapolation. `order` is 1 or 2.
/// A zero `initial_step` picks 0.1 * max(1, |z|). Non-finite samples shrink
/// the step a few times before giving up with DomainError.
double derivative(const RealFunction& f, double z, int order, double initial_step = 0.0);

// ---------------------------------------------------------------------------
// Residual scanning
// ---------------------------------------------------------------------------

struct ValidationReport {
  std::string check;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double worst_zeta = std::numeric_limits<double>::quiet_NaN();
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  std::string note;

  double skipped_fraction() const {
    const auto total = evaluated + skipped;
    return total == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(total);
  }
  /// Folds one residual sample in: max by value, ties go to the smaller zeta.
  void record(double zeta, double residual);
  void finalize();
};

struct Window {
  double lo = 0.0;
  double hi = 1.0;
};

/// residual(zeta, v, v', v'') of the ODE being certified.
using OdeResidual = std::function<double(double, double, double, double)>;
/// Extra exclusion rule (turning points, wrong root sheet, ...).
using SkipRule = std::function<bool(double zeta, double v, double dv)>;

struct ScanOptions {
  double amplitude_guard = kAmplitudeGuard;
  SkipRule skip;
  double derivative_step = 0.0;
};

/// Samples `samples` equally spaced points of the window (endpoints included).
/// Points where sol is not finite, |v| is inside the guard band, the skip rule
/// fires, or the difference stencil leaves the domain are counted as skipped.
ValidationReport residual_scan(const std::string& check, const RealFunction& sol,
                               const OdeResidual& residual, Window window,
                               std::size_t samples, double tolerance,
                               const ScanOptions& options = {});

/// Same scan for a solution given through its power s = v^m (m >= 2), which
/// stays smooth where v itself has a branch point (the zeros of s). s' and
/// s'' come from derivative(); v = s^(1/m) for s > 0 (other points are
/// skipped) and v', v'' follow from the chain rule.
ValidationReport residual_scan_power(const std::string& check, const RealFunction& power, int m,
                                     const OdeResidual& residual, Window window,
                                     std::size_t samples, double tolerance,
                                     const ScanOptions& options = {});

}  // namespace eplab::oracle
