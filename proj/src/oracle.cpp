#include "eplab/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <queue>
#include <sstream>

#include "eplab/errors.hpp"

namespace eplab::oracle {

const char* to_string(IntegrationStatus status) {
  switch (status) {
    case IntegrationStatus::Completed: return "completed";
    case IntegrationStatus::DomainBoundary: return "domain-boundary";
    case IntegrationStatus::StepUnderflow: return "step-underflow";
    case IntegrationStatus::StepLimit: return "step-limit";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)
// ---------------------------------------------------------------------------

namespace {

namespace dp {
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Dense output (Hairer's contd5 coefficients).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dp

bool all_finite(const State& s) {
  return std::all_of(s.begin(), s.end(), [](double x) { return std::isfinite(x); });
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (const auto& [w, k] : terms) acc += w * (*k)[i];
    out[i] += h * acc;
  }
  return out;
}

// Evaluates rhs, mapping exceptions and wrong sizes to a non-finite result.
bool eval_rhs(const Rhs& rhs, double t, const State& y, State& out) {
  if (!all_finite(y)) return false;
  try {
    out = rhs(t, y);
  } catch (const Error&) {
    return false;
  }
  return out.size() == y.size() && all_finite(out);
}

}  // namespace

bool Trajectory::covers(double zeta) const {
  if (nodes_.empty()) return false;
  const double lo = std::min(nodes_.front(), nodes_.back());
  const double hi = std::max(nodes_.front(), nodes_.back());
  return zeta >= lo && zeta <= hi;
}

State Trajectory::operator()(double zeta) const {
  if (!covers(zeta)) {
    std::ostringstream msg;
    msg << "trajectory does not cover zeta=" << zeta << " (reached " << reached() << ")";
    throw DomainError(msg.str());
  }
  // Position along the direction of integration.
  const double s = direction_ * zeta;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s,
                             [this](double node, double key) { return direction_ * node < key; });
  const auto idx = static_cast<std::size_t>(it - nodes_.begin());
  if (it != nodes_.end() && *it == zeta) return states_[idx];
  const Segment& seg = segments_.at(idx - 1);
  const double theta = (zeta - seg.zeta0) / seg.h;
  const double theta1 = 1.0 - theta;
  const auto& r = seg.coeffs;
  State out(r[0].size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = r[0][i] + theta * (r[1][i] + theta1 * (r[2][i] + theta * (r[3][i] + theta1 * r[4][i])));
  }
  return out;
}

Trajectory integrate_ivp(const IVPProblem& p) {
  if (!(p.rel_tol > 0.0) || !(p.abs_tol > 0.0)) {
    throw InvalidParameter("integrate_ivp: tolerances must be positive");
  }
  if (p.zeta_a == p.zeta_b) throw InvalidParameter("integrate_ivp: empty span");
  if (p.y0.empty()) throw InvalidParameter("integrate_ivp: empty state");

  Trajectory traj;
  const double dir = p.zeta_b > p.zeta_a ? 1.0 : -1.0;
  traj.direction_ = dir;
  traj.nodes_.push_back(p.zeta_a);
  traj.states_.push_back(p.y0);

  const std::size_t n = p.y0.size();
  double t = p.zeta_a;
  State y = p.y0;
  State k1, k2, k3, k4, k5, k6, k7;
  if (!eval_rhs(p.rhs, t, y, k1)) {
    traj.status_ = IntegrationStatus::DomainBoundary;
    traj.message_ = "rhs not finite at the initial point";
    return traj;
  }

  auto weighted_norm = [&](const State& v, const State& ya, const State& yb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sk = p.abs_tol + p.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      acc += (v[i] / sk) * (v[i] / sk);
    }
    return std::sqrt(acc / static_cast<double>(n));
  };

  const double span = std::abs(p.zeta_b - p.zeta_a);
  const double max_step = std::min(span, p.max_step);

  // Initial step (Hairer & Wanner, II.4).
  double h;
  {
    const double d0 = weighted_norm(y, y, y);
    const double d1 = weighted_norm(k1, y, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, max_step);
    State y1 = axpy(y, dir * h0, {{1.0, &k1}});
    State f1;
    double h1;
    if (eval_rhs(p.rhs, t + dir * h0, y1, f1)) {
      State diff(n);
      for (std::size_t i = 0; i < n; ++i) diff[i] = (f1[i] - k1[i]) / h0;
      const double d2 = weighted_norm(diff, y, y);
      const double dmax = std::max(d1, d2);
      h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    } else {
      h1 = h0 * 1e-2;
    }
    h = std::min({100.0 * h0, h1, max_step});
  }

  constexpr double kSafety = 0.9, kMinFactor = 0.2, kMaxFactor = 10.0;
  bool last_reject_domain = false;
  std::size_t steps = 0;

  while (dir * (p.zeta_b - t) > 0.0) {
    if (steps++ >= p.max_steps) {
      traj.status_ = IntegrationStatus::StepLimit;
      traj.message_ = "step limit reached";
      return traj;
    }
    const double remaining = std::abs(p.zeta_b - t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    }
    const double min_h = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < min_h) {
      traj.status_ = last_reject_domain ? IntegrationStatus::DomainBoundary
                                        : IntegrationStatus::StepUnderflow;
      std::ostringstream msg;
      msg << (last_reject_domain ? "rhs left its domain" : "step size underflow") << " near zeta=" << t;
      traj.message_ = msg.str();
      return traj;
    }
    const double hs = dir * h;
    using namespace dp;
    bool ok = eval_rhs(p.rhs, t + c2 * hs, axpy(y, hs, {{a21, &k1}}), k2) &&
              eval_rhs(p.rhs, t + c3 * hs, axpy(y, hs, {{a31, &k1}, {a32, &k2}}), k3) &&
              eval_rhs(p.rhs, t + c4 * hs, axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4) &&
              eval_rhs(p.rhs, t + c5 * hs,
                       axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5) &&
              eval_rhs(p.rhs, t + hs,
                       axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}),
                       k6);
    State ynew;
    if (ok) {
      ynew = axpy(y, hs, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
      ok = eval_rhs(p.rhs, t + hs, ynew, k7);
    }
    if (!ok) {
      last_reject_domain = true;
      h *= 0.25;
      continue;
    }
    State err = axpy(State(n, 0.0), hs,
                     {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});
    const double e = weighted_norm(err, y, ynew);
    if (!std::isfinite(e)) {
      last_reject_domain = true;
      h *= 0.25;
      continue;
    }
    if (e > 1.0) {
      last_reject_domain = false;
      h *= std::max(kMinFactor, kSafety * std::pow(e, -0.2));
      continue;
    }

    // Accept.
    Trajectory::Segment seg;
    seg.zeta0 = t;
    seg.h = hs;
    seg.coeffs.assign(5, State(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double ydiff = ynew[i] - y[i];
      const double bspl = hs * k1[i] - ydiff;
      seg.coeffs[0][i] = y[i];
      seg.coeffs[1][i] = ydiff;
      seg.coeffs[2][i] = bspl;
      seg.coeffs[3][i] = ydiff - hs * k7[i] - bspl;
      seg.coeffs[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                               d7 * k7[i]);
    }
    t = last ? p.zeta_b : t + hs;
    y = std::move(ynew);
    k1 = k7;
    traj.segments_.push_back(std::move(seg));
    traj.nodes_.push_back(t);
    traj.states_.push_back(y);
    last_reject_domain = false;

    const double factor = e == 0.0 ? kMaxFactor : std::min(kMaxFactor, kSafety * std::pow(e, -0.2));
    h = std::min(h * std::max(kMinFactor, factor), max_step);
  }
  traj.status_ = IntegrationStatus::Completed;
  return traj;
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

double checked(const RealFunction& f, double x) {
  const double fx = f(x);
  if (!std::isfinite(fx)) {
    std::ostringstream msg;
    msg << "quadrature: integrand not finite at " << x;
    throw DomainError(msg.str());
  }
  return fx;
}

Piece gk15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = checked(f, center);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double s = checked(f, center - dx) + checked(f, center + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * half, std::abs((kron - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const RealFunction& f, double a, double b, double tol,
                           std::size_t max_intervals) {
  if (!(tol > 0.0)) throw InvalidParameter("quadrature: tolerance must be positive");
  if (a == b) return {};
  if (a > b) {
    auto r = integrate(f, b, a, tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<Piece> heap;
  heap.push(gk15(f, a, b));
  double value = heap.top().value;
  double error = heap.top().error;
  std::size_t intervals = 1;
  while (error > tol * std::max(1.0, std::abs(value))) {
    if (intervals >= max_intervals) {
      std::ostringstream msg;
      msg << "quadrature: no convergence after " << intervals << " intervals (error " << error << ")";
      throw NonConvergence(msg.str());
    }
    const Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
    if (error <= tol * std::max(1.0, std::abs(value))) {
      // Re-sum to drop accumulated cancellation in the running totals.
      double v = 0.0, e = 0.0;
      auto copy = heap;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      value = v;
      error = e;
    }
  }
  return {value, error, intervals};
}

// ---------------------------------------------------------------------------
// Ridders' extrapolation
// ---------------------------------------------------------------------------

namespace {

struct RiddersResult {
  double value = 0.0;
  double error = 0.0;
};

RiddersResult ridders(const RealFunction& f, double z, int order, double h) {
  constexpr int kTable = 10;
  constexpr double kCon = 1.4, kCon2 = kCon * kCon, kSafe = 2.0;
  const double fz = order == 2 ? f(z) : 0.0;
  double fscale = std::abs(fz);
  auto stencil = [&](double hh) {
    const double fp = f(z + hh);
    const double fm = f(z - hh);
    fscale = std::max({fscale, std::abs(fp), std::abs(fm)});
    const double d = order == 1 ? (fp - fm) / (2.0 * hh) : (fp - 2.0 * fz + fm) / (hh * hh);
    if (!std::isfinite(d)) throw DomainError("derivative: non-finite sample");
    return d;
  };
  std::array<std::array<double, kTable>, kTable> a{};
  double hh = h;
  a[0][0] = stencil(hh);
  double best = a[0][0];
  double best_step = hh;
  double err = std::numeric_limits<double>::max();
  for (int i = 1; i < kTable; ++i) {
    hh /= kCon;
    a[0][i] = stencil(hh);
    double fac = kCon2;
    for (int j = 1; j <= i; ++j) {
      a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0);
      fac *= kCon2;
      const double errt =
          std::max(std::abs(a[j][i] - a[j - 1][i]), std::abs(a[j][i] - a[j - 1][i - 1]));
      if (errt <= err) {
        err = errt;
        best = a[j][i];
        best_step = hh;
      }
    }
    if (std::abs(a[i][i] - a[i - 1][i - 1]) >= kSafe * err) break;
  }
  // The tableau cannot see rounding in the stencil; add it as a floor.
  const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * fscale /
                          (order == 1 ? best_step : best_step * best_step);
  return {best, std::max(err, rounding)};
}

}  // namespace

double derivative(const RealFunction& f, double z, int order, double initial_step) {
  if (order != 1 && order != 2) throw InvalidParameter("derivative: order must be 1 or 2");
  double h = initial_step > 0.0 ? initial_step : 0.1 * std::max(1.0, std::abs(z));
  if (order == 2 && !std::isfinite(f(z))) throw DomainError("derivative: non-finite sample");
  // A too-coarse first step can fool the error estimate, so several tableaux
  // are built and the one with the smallest estimated error wins.
  std::optional<RiddersResult> best;
  for (int attempt = 0; attempt < 6; ++attempt, h *= 0.25) {
    try {
      const auto r = ridders(f, z, order, h);
      if (!best || r.error < best->error) best = r;
    } catch (const DomainError&) {
    }
  }
  if (!best) throw DomainError("derivative: non-finite samples near the evaluation point");
  return best->value;
}

// ---------------------------------------------------------------------------
// Residual scan
// ---------------------------------------------------------------------------

void ValidationReport::record(double zeta, double residual) {
  ++evaluated;
  const double r = std::abs(residual);
  if (std::isnan(r)) {
    max_residual = r;
    worst_zeta = zeta;
    return;
  }
  if (std::isnan(max_residual)) return;
  if (r > max_residual || (r == max_residual && (std::isnan(worst_zeta) || zeta < worst_zeta))) {
    max_residual = r;
    worst_zeta = zeta;
  }
}

void ValidationReport::finalize() {
  passed = evaluated > 0 && std::isfinite(max_residual) && max_residual <= tolerance;
  if (evaluated == 0 && note.empty()) note = "all points skipped";
}

namespace {

struct LocalJet {
  double v = 0.0;
  double dv = 0.0;
  double d2v = 0.0;
};

/// Sample loop shared by the scans. `value` gives v (throwing or non-finite
/// means skip); `jet` completes v', v'' once v passed the amplitude guard.
ValidationReport scan_grid(const std::string& check, const RealFunction& value,
                           const std::function<LocalJet(double, double)>& jet,
                           const OdeResidual& residual, Window window, std::size_t samples,
                           double tolerance, const ScanOptions& options) {
  if (samples < 2) throw InvalidParameter("residual_scan: need at least two samples");
  if (!(window.hi > window.lo)) throw InvalidParameter("residual_scan: empty window");
  ValidationReport report;
  report.check = check;
  report.tolerance = tolerance;
  const double step = (window.hi - window.lo) / static_cast<double>(samples - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    const double zeta = i + 1 == samples ? window.hi : window.lo + step * static_cast<double>(i);
    double v = 0.0;
    try {
      v = value(zeta);
    } catch (const Error&) {
      ++report.skipped;
      continue;
    }
    if (!std::isfinite(v) || std::abs(v) < options.amplitude_guard) {
      ++report.skipped;
      continue;
    }
    LocalJet j;
    try {
      j = jet(zeta, v);
      if (!std::isfinite(j.dv) || !std::isfinite(j.d2v) ||
          (options.skip && options.skip(zeta, v, j.dv))) {
        ++report.skipped;
        continue;
      }
    } catch (const Error&) {
      ++report.skipped;
      continue;
    }
    double r = 0.0;
    try {
      r = residual(zeta, v, j.dv, j.d2v);
    } catch (const Error&) {
      ++report.skipped;
      continue;
    }
    report.record(zeta, r);
  }
  report.finalize();
  return report;
}

}  // namespace

ValidationReport residual_scan(const std::string& check, const RealFunction& sol,
                               const OdeResidual& residual, Window window, std::size_t samples,
                               double tolerance, const ScanOptions& options) {
  auto jet = [&](double zeta, double v) {
    return LocalJet{v, derivative(sol, zeta, 1, options.derivative_step),
                    derivative(sol, zeta, 2, options.derivative_step)};
  };
  return scan_grid(check, sol, jet, residual, window, samples, tolerance, options);
}

ValidationReport residual_scan_power(const std::string& check, const RealFunction& power, int m,
                                     const OdeResidual& residual, Window window,
                                     std::size_t samples, double tolerance,
                                     const ScanOptions& options) {
  if (m < 2) throw InvalidParameter("residual_scan_power: m must be at least 2");
  const double p = 1.0 / m;
  auto value = [&](double zeta) {
    const double s = power(zeta);
    return s > 0.0 ? std::pow(s, p) : std::numeric_limits<double>::quiet_NaN();
  };
  auto jet = [&](double zeta, double v) {
    const double s = power(zeta);
    const double ds = derivative(power, zeta, 1, options.derivative_step);
    const double d2s = derivative(power, zeta, 2, options.derivative_step);
    const double dv = p * v * ds / s;
    const double d2v = p * v / s * (d2s + (p - 1.0) * ds * ds / s);
    return LocalJet{v, dv, d2v};
  };
  return scan_grid(check, value, jet, residual, window, samples, tolerance, options);
}

}  // namespace eplab::oracle
