#include "eplab/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "eplab/abel_factor.hpp"
#include "eplab/errors.hpp"
#include "eplab/figures.hpp"
#include "eplab/invariant_theorem.hpp"
#include "eplab/linear_core.hpp"
#include "eplab/reid.hpp"
#include "eplab/series_io.hpp"

namespace eplab::validation {
namespace {

using chiellini::EPParams;
using chiellini::Sign;
using linear::Branch;
using oracle::ValidationReport;
using oracle::Window;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double real_or_nan(ComplexValue z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return kNaN;
  return is_real(z, 1e-13) ? z.real() : kNaN;
}

double radicand_floor(const EPParams& p) {
  return oracle::kRadicandGuard * std::max(1.0, p.c1 * p.c1);
}

EPParams params(double lambda2, double c, double c1, Sign sign = Sign::Plus, double zeta0 = 0.0,
                double k = -2.0) {
  EPParams p;
  p.lambda2 = lambda2;
  p.c = c;
  p.c1 = c1;
  p.k = k;
  p.zeta0 = zeta0;
  p.sign = sign;
  return p;
}

ValidationReport start(const std::string& check, double tolerance) {
  ValidationReport r;
  r.check = check;
  r.tolerance = tolerance;
  return r;
}

/// Samples f(x) over a grid; Error or non-finite values count as skipped.
ValidationReport grid_report(const std::string& check, Window w, std::size_t n, double tolerance,
                             const std::function<double(double)>& f) {
  auto r = start(check, tolerance);
  for (double x : io::linspace(w.lo, w.hi, n)) {
    try {
      const double v = f(x);
      if (!std::isfinite(v)) {
        ++r.skipped;
        continue;
      }
      r.record(x, v);
    } catch (const Error&) {
      ++r.skipped;
    }
  }
  r.finalize();
  return r;
}

/// A yes/no outcome as a report: residual 0 when `ok`, 1 otherwise.
ValidationReport outcome(const std::string& check, bool ok, std::string note) {
  auto r = start(check, 0.0);
  r.record(0.0, ok ? 0.0 : 1.0);
  r.finalize();
  r.note = std::move(note);
  return r;
}

struct Collector {
  std::string suite;
  std::vector<CaseResult>* out;
  void add(std::string id, ValidationReport r) {
    out->push_back({suite, std::move(id), std::move(r)});
  }
  /// Guards a whole case: an unexpected library error becomes a FAIL line.
  void run(const std::string& id, const std::function<ValidationReport()>& body) {
    try {
      add(id, body());
    } catch (const std::exception& e) {
      auto r = start(id, 0.0);
      r.max_residual = kNaN;
      r.note = std::string("error: ") + e.what();
      r.finalize();
      add(id, std::move(r));
    }
  }
};

std::string fmt(double x) { return io::format_number(x); }

// ---------------------------------------------------------------------------
// residual
// ---------------------------------------------------------------------------

ValidationReport sep_case(Branch branch, double c) {
  const double lambda = 1.0;
  const double h = branch == Branch::Positive ? 1.0 : branch == Branch::Negative ? -1.0 : 0.0;
  const Window w = branch == Branch::Positive ? Window{0.0, 10.0} : Window{-3.0, 3.0};
  auto square = [=](double z) { return linear::sep_square(branch, lambda, c, z); };
  auto res = [=](double, double v, double, double d2v) {
    return linear::sep_residual(h, c, v, d2v);
  };
  return oracle::residual_scan_power("sep", square, 2, res, w, 401, 1e-8);
}

ValidationReport pinney_case(const linear::PinneyCoeffs& coeffs, double lambda) {
  const linear::LinearBasis basis(Branch::Positive, lambda);
  const linear::PinneySolution sol(basis, coeffs);
  auto f = [&](double z) { return real_or_nan(sol(z)); };
  auto res = [&](double, double v, double, double d2v) {
    return linear::sep_residual(basis.h(), coeffs.c, v, d2v);
  };
  return oracle::residual_scan("pinney-general", f, res, {0.0, 10.0}, 401, 1e-8);
}

ValidationReport reid_case(const reid::ReidParams& rp) {
  const linear::LinearBasis basis(Branch::Positive, rp.lambda);
  auto power = [&](double z) { return reid::reid_power(basis, rp, z); };
  auto res = [&](double z, double v, double, double d2v) {
    const double q = reid::q_m(basis.u1(z), basis.u2(z), rp);
    return reid::reid_residual(basis.h(), q, rp.m, v, d2v);
  };
  return oracle::residual_scan_power("reid-general", power, rp.m, res, {0.0, 10.0}, 401, 1e-8);
}

void residual_suite(Collector& c) {
  for (const auto& cf : closed_form_cases()) {
    c.run("rs10-" + cf.id, [&] { return closed_form_residual(cf, 1000, 1e-6); });
  }
  for (Branch b : {Branch::Negative, Branch::Zero, Branch::Positive}) {
    for (double cc : {1.0, -1.0, 0.5}) {
      c.run(std::string("sep-") + linear::to_string(b) + "-c" + fmt(cc),
            [&] { return sep_case(b, cc); });
    }
  }
  c.run("pinney-general-a211", [] { return pinney_case({2.0, 1.0, 1.0, -1.0}, 1.0); });
  c.run("pinney-general-l05", [] { return pinney_case({1.0, 2.0, 0.5, -1.75 * 0.25}, 0.5); });

  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> lam(0.3, 1.5), ct(0.2, 2.0);
  for (int m : {2, 3, 4}) {
    auto rp = reid::unity_params(Branch::Positive, m);
    c.run("reid-r5-m" + std::to_string(m) + "-unity", [&] { return reid_case(rp); });
    for (int i = 0; i < 3; ++i) {
      rp.lambda = lam(rng);
      rp.c_tilde = ct(rng);
      c.run("reid-r5-m" + std::to_string(m) + "-rand" + std::to_string(i),
            [&] { return reid_case(rp); });
    }
  }

  // Reid machinery collapsing onto the Pinney construction.
  for (double lambda : {0.5, 1.0}) {
    for (double ctilde : {1.0, 0.5}) {
      c.run("reid-m2-pinney-l" + fmt(lambda) + "-c" + fmt(ctilde), [=] {
        const linear::LinearBasis basis(Branch::Positive, lambda);
        reid::ReidParams rp{2, Branch::Positive, lambda, 1.0, 1.0, ctilde};
        return grid_report("reid-m2-pinney", {0.0, 10.0}, 401, 1e-9, [&](double z) {
          return std::abs(reid::reid_general(basis, rp, z) -
                          linear::pinney_particular(basis, -ctilde, z));
        });
      });
    }
  }
  for (int m : {2, 3, 4}) {
    c.run("reid-ctilde0-m" + std::to_string(m), [=] {
      const linear::LinearBasis basis(Branch::Positive, 1.0);
      reid::ReidParams rp{m, Branch::Positive, 1.0, 1.0, 1.0, 0.0};
      // Odd m: the principal root of a negative u1^m is not |u1|; stay where u1 > 0.
      const Window w = m % 2 ? Window{-1.5, 1.5} : Window{0.0, 10.0};
      return grid_report("reid-ctilde0", w, 401, 1e-9, [&](double z) {
        return std::abs(reid::reid_general(basis, rp, z) - linear::pinney_particular(basis, 0.0, z));
      });
    });
  }

  c.run("theorem-gen-erm", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const invariant::GeneralSolutionU u(1.0, p, 1.0, Sign::Minus);
    return invariant::theorem_residual_report(u, p, 1.0, {0.3, 1.1}, 201, 1e-6);
  });
}

// ---------------------------------------------------------------------------
// invariant
// ---------------------------------------------------------------------------

void invariant_suite(Collector& c) {
  struct Undamped {
    const char* id;
    double lambda2, b, cc, u, du, v, dv;
  };
  const Undamped undamped[] = {
      // Negative b and c make the inverse-cube terms repulsive, so u and v
      // stay away from zero over the whole span.
      {"pair-undamped-01", 0.25, -1.0, -1.0, 1.0, 0.2, 1.5, -0.1},
      {"pair-undamped-02", 1.0, -2.0, -0.5, 0.8, 0.0, 1.2, 0.3},
      {"pair-undamped-03", 0.0, -1.0, -3.0, 1.0, 0.5, 2.0, 0.0},
  };
  for (const auto& u : undamped) {
    c.run(u.id, [&] {
      invariant::PairIVP ivp;
      ivp.start = {u.u, u.du, u.v, u.dv, u.b, u.cc};
      ivp.lambda2 = u.lambda2;
      ivp.zeta_a = 0.0;
      ivp.zeta_b = 5.0;
      ivp.damped = false;
      return invariant::ermakov_pair_drift(ivp, 501, 1e-8).report;
    });
  }

  c.run("pair-damped-01", [] {
    // v on the always-increasing closed form; u an arbitrary partner.
    const EPParams p = params(-0.25, 1.0, 1.0, Sign::Minus);
    const chiellini::DissipativeSolution sol(p);
    const auto s = closed_form_state(sol, 0.5);
    invariant::PairIVP ivp;
    ivp.start = {2.0, 0.5, s.v, s.dv, 1.0, p.c};
    ivp.lambda2 = p.lambda2;
    ivp.zeta_a = 0.5;
    ivp.zeta_b = 5.5;
    ivp.damped = true;
    ivp.damping = p;
    return invariant::ermakov_pair_drift(ivp, 501, 1e-8).report;
  });

  struct C1 {
    const char* id;
    double I, b, cc;
    Sign sign;
  };
  const C1 c1cases[] = {
      {"invariant-is-c1-hyperbolic", 1.0, 2.0, 0.5, Sign::Minus},
      {"invariant-is-c1-i3", 3.0, 1.0, -1.0, Sign::Plus},
      {"invariant-is-c1-oscillatory", 1.0, 2.0, -0.5, Sign::Plus},
      {"invariant-is-c1-algebraic", 1.0, 1.0, 0.0, Sign::Plus},
  };
  for (const auto& k : c1cases) {
    c.run(k.id, [&] {
      const EPParams p = params(0.25, k.cc, k.I, k.sign);
      return invariant::invariant_is_c1_check(p, k.b, 1.0, 1e-8);
    });
  }

  c.run("theorem-invariant", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const invariant::GeneralSolutionU u(1.0, p, 1.0, Sign::Minus);
    return invariant::theorem_invariant_report(u, p, 1.0, {0.3, 1.1}, 101, 1e-6);
  });
}

// ---------------------------------------------------------------------------
// chiellini
// ---------------------------------------------------------------------------

ValidationReport chiellini_matrix_case(const EPParams& p) {
  return grid_report("chiellini-condition", {0.2, 3.0}, 200, 1e-8, [&](double v) {
    if (chiellini::radicand(v, p) < radicand_floor(p)) return kNaN;
    return chiellini::chiellini_residual(v, p);
  });
}

/// Inverts zeta - zeta_a = int_{v_a}^{v} x dx / sqrt(R(x)) by bisection.
ValidationReport quadrature_inversion(const EPParams& p, double zeta_a, Window w) {
  const chiellini::DissipativeSolution sol(p);
  const double va = sol.real_value(zeta_a);
  auto F = [&](double v) {
    return oracle::integrate(
        [&](double x) { return x / std::sqrt(chiellini::radicand(x, p)); }, va, v, 1e-13).value;
  };
  // Upper bracket: the radicand's turning point when it exists.
  double top = kNaN;
  if (p.lambda2 > 0.0) {
    top = std::sqrt((p.c1 + std::sqrt(p.c1 * p.c1 + 16.0 * p.lambda2 * p.c)) / (4.0 * p.lambda2));
  }
  return grid_report("quadrature-inversion", w, 25, 1e-6, [&](double z) {
    const double target = z - zeta_a;
    double lo = va, hi = std::isfinite(top) ? top : 2.0 * va;
    if (!std::isfinite(top)) {
      while (F(hi) < target) hi *= 2.0;
    }
    for (int i = 0; i < 80 && hi - lo > 1e-14 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (F(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) - sol.real_value(z);
  });
}

void chiellini_suite(Collector& c) {
  const EPParams fixed[] = {
      params(1.0, 1.0, 3.0),   params(0.0, 1.0, 1.0),  params(0.25, 1.0, 1.0),
      params(-0.25, 1.0, 1.0), params(0.5, 0.5, 2.0),  params(-1.0, 0.5, 4.0),
  };
  // Random sets are redrawn until g is real on at least half of the v grid;
  // for k > 0 the radicand can be negative for every v.
  auto usable = [](const EPParams& p) {
    int real = 0;
    for (double v : io::linspace(0.2, 3.0, 200)) real += chiellini::radicand(v, p) > radicand_floor(p);
    return real >= 100;
  };
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> l2(-1.0, 1.0), cc(0.1, 2.0), c1(0.5, 4.0);
  for (double k : {-2.0, -1.0, 1.0, 2.0}) {
    std::vector<EPParams> sets;
    for (auto p : fixed) {
      p.k = k;
      if (usable(p)) sets.push_back(p);
    }
    while (sets.size() < 11) {
      auto p = params(l2(rng), cc(rng), c1(rng), Sign::Plus, 0.0, k);
      if (usable(p)) sets.push_back(p);
    }
    int idx = 0;
    for (const auto& p : sets) {
      std::ostringstream id;
      id << "chiellini-k" << fmt(k) << "-" << (idx < 10 ? "0" : "") << idx;
      ++idx;
      c.run(id.str(), [p] { return chiellini_matrix_case(p); });
    }
  }

  c.run("chiellini-perturbed-control", [] {
    // g + 0.1 must violate the condition: report passes when the residual
    // stays above 1e-2 everywhere.
    const EPParams p = params(1.0, 1.0, 3.0);
    auto g = [&](double v) { return chiellini::g_lambda(v, p) + 0.1; };
    double least = std::numeric_limits<double>::infinity();
    for (double v : io::linspace(0.8, 1.3, 50)) {
      least = std::min(least, std::abs(chiellini::chiellini_residual(v, p, g)));
    }
    return outcome("chiellini-perturbed-control", least > 1e-2, "min |residual| = " + fmt(least));
  });

  c.run("abel-eta-vplus", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const chiellini::DissipativeSolution sol(p);
    auto f = [&](double z) { return sol.real_value(z); };
    return grid_report("abel-eta", {-0.9, 0.9}, 201, 1e-7, [&](double z) {
      const double v = f(z);
      if (!std::isfinite(v) || sol.square_slope(z) <= 0.0 ||
          chiellini::radicand(v, p) < radicand_floor(p)) {
        return kNaN;
      }
      return oracle::derivative(f, z, 1) - chiellini::abel_eta(v, p);
    });
  });

  c.run("quadrature-a21-pos", [] { return quadrature_inversion(params(0.25, 1.0, 1.0), 0.0, {0.05, 1.0}); });
  c.run("quadrature-a21-neg", [] {
    return quadrature_inversion(params(-0.25, 1.0, 1.0, Sign::Minus), 0.6, {0.7, 3.0});
  });
  c.run("quadrature-a21-zero", [] { return quadrature_inversion(params(0.0, 1.0, 1.0), 2.0, {2.1, 5.0}); });

  c.run("reduced-harmonic-ivp", [] {
    const double lambda = 0.5, c1 = 1.0;
    const EPParams p = params(lambda * lambda, 0.0, c1);
    const auto pair = chiellini::reduced_harmonic(c1, lambda);
    const double quarter = std::numbers::pi / (2.0 * pair.frequency);
    auto r = start("reduced-harmonic-ivp", 1e-6);
    for (double end : {0.95 * quarter, -0.95 * quarter}) {
      oracle::IVPProblem prob;
      prob.rhs = [&](double, const oracle::State& y) {
        return oracle::State{y[1], -chiellini::g_reduced(y[0], p) * y[1] - p.lambda2 * y[0]};
      };
      prob.y0 = {pair.v1(0.0), pair.dv1(0.0)};
      prob.zeta_a = 0.0;
      prob.zeta_b = end;
      prob.rel_tol = 1e-11;
      prob.abs_tol = 1e-13;
      const auto traj = oracle::integrate_ivp(prob);
      if (!traj.completed()) {
        r.note = std::string("integration halted: ") + oracle::to_string(traj.status());
        r.record(traj.reached(), kNaN);
        continue;
      }
      for (double z : io::linspace(0.0, end, 101)) r.record(z, traj.component(z, 0) - pair.v1(z));
    }
    r.finalize();
    return r;
  });

  for (int id : {7, 8, 9}) {
    const auto& preset = figures::find_figure(std::to_string(id));
    c.run("gain-" + preset.label, [&preset] {
      const auto s = figures::build_figure(preset);
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& v : s.curves.front().values) {
        if (std::isfinite(v.real())) {
          lo = std::min(lo, v.real());
          hi = std::max(hi, v.real());
        }
      }
      return outcome("dissipation-gain", lo < 0.0 && hi > 0.0,
                     "g range [" + fmt(lo) + ", " + fmt(hi) + "]");
    });
  }
}

// ---------------------------------------------------------------------------
// phase
// ---------------------------------------------------------------------------

Window real_phase_window(const reid::ReidParams& rp) {
  if (rp.branch != Branch::Positive) return {0.0, 2.0};
  const double shift = std::atan2(rp.A(), rp.B());
  const double lo = -shift / (rp.m * rp.lambda);
  const double hi = (std::numbers::pi - shift) / (rp.m * rp.lambda);
  const double margin = 0.05 * (hi - lo);
  return {lo + margin, hi - margin};
}

void phase_suite(Collector& c) {
  for (int m = 2; m <= 5; ++m) {
    for (Branch b : {Branch::Negative, Branch::Zero, Branch::Positive}) {
      c.run("theta-m" + std::to_string(m) + "-" + linear::to_string(b), [=] {
        const auto rp = reid::unity_params(b, m);
        const Window w = real_phase_window(rp);
        const double anchor = reid::theta_m(rp, w.lo);
        return grid_report("theta-vs-quadrature", w, 41, 1e-7, [&](double z) {
          return reid::theta_m(rp, z) - anchor - reid::phase_quadrature(rp, w.lo, z);
        });
      });
    }
  }

  const auto elementary = [](Branch b, double z) {
    switch (b) {
      case Branch::Negative: return std::atan(std::exp(z));
      case Branch::Zero: return std::atan(z);
      case Branch::Positive: break;
    }
    return -std::atanh((std::cos(z) - std::sin(z)) / std::numbers::sqrt2) / std::numbers::sqrt2;
  };
  for (Branch b : {Branch::Negative, Branch::Zero, Branch::Positive}) {
    const auto rp = reid::unity_params(b, 2);
    const Window w = b == Branch::Positive ? real_phase_window(rp) : Window{-2.0, 2.0};
    c.run(std::string("theta-m2-elementary-") + linear::to_string(b), [=] {
      return grid_report("theta-m2-elementary", w, 81, 1e-9,
                         [&](double z) { return reid::theta_m(rp, z) - elementary(b, z); });
    });
    c.run(std::string("u-m2-elementary-") + linear::to_string(b), [=] {
      const auto k = reid::unity_theta_constants(b);
      // Plus follows the phase orientation of the hypergeometric forms, which
      // is the lower printed sign on the trigonometric branch.
      const bool upper = b != Branch::Positive;
      return grid_report("u-m2-elementary", {-2.0, 2.0}, 81, 1e-9, [&](double z) {
        const ComplexValue u = reid::u_m(rp, k, Sign::Plus, z);
        const ComplexValue e = reid::u_m2_elementary(b, upper, z);
        return std::max(std::abs(u * u - e * e), std::abs(std::abs(u) - std::abs(e)));
      });
    });
    c.run(std::string("m2-compose-") + linear::to_string(b), [=] {
      // Amplitude-phase composition with a Milne phase from quadrature.
      const auto k = reid::unity_theta_constants(b);
      const double zs = 0.5 * (w.lo + w.hi);
      const invariant::PhaseAccumulator acc{zs, 0.0, 1e-12};
      const double anchor = reid::theta_m(rp, zs);
      auto vr = [&](double z) { return real_or_nan(reid::v_m(rp, z)); };
      return grid_report("m2-compose", w, 41, 1e-9, [&](double z) {
        const double phase = anchor + invariant::milne_phase(vr, acc, z);
        const ComplexValue viaMilne =
            invariant::compose_amplitude_phase(k, Sign::Plus, phase, reid::v_m(rp, z));
        return std::abs(viaMilne - reid::u_m(rp, k, Sign::Plus, z));
      });
    });
  }
}

// ---------------------------------------------------------------------------
// factorization
// ---------------------------------------------------------------------------

void factorization_suite(Collector& c) {
  const EPParams sets[] = {
      params(0.25, 1.0, 1.0),  params(-0.25, 1.0, 1.0), params(0.0, 1.0, 1.0),
      params(1.0, 1.0, 3.0),   params(0.5, 2.0, 1.0),   params(-1.0, 0.5, 2.0),
      params(0.1, 0.2, 0.5),   params(2.0, 0.3, 4.0),   params(-0.5, 2.0, 0.5),
      params(0.25, -0.1, 2.0),
  };
  int idx = 0;
  for (const auto& p : sets) {
    const std::string id = std::string("identities-") + (idx < 10 ? "0" : "") + std::to_string(idx);
    ++idx;
    c.run(id, [p] {
      return grid_report("factorization-identities", {0.5, 2.0}, 151, 1e-8, [&](double v) {
        if (chiellini::radicand(v, p) < radicand_floor(p)) return kNaN;
        return std::max(std::abs(abel::factorization_g_residual(v, p)),
                        std::abs(abel::factorization_h_residual(v, p)));
      });
    });
  }

  c.run("dphi1-audit", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    return grid_report("dphi1-audit", {0.5, 2.0}, 151, 1e-8, [&](double v) {
      auto phi1 = [&](double x) { return abel::phi_functions(x, p).phi1; };
      return abel::dphi1_dv(v, p) - oracle::derivative(phi1, v, 1, 1e-2);
    });
  });

  c.run("first-factor-vplus", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const chiellini::DissipativeSolution sol(p);
    const auto traj = abel::first_factor_solution(p, sol.real_value(0.0), {0.0, 1.0});
    if (!traj.completed()) return outcome("first-factor", false, "halted early");
    return grid_report("first-factor", {0.0, 1.0}, 101, 1e-6, [&](double z) {
      return traj.component(z, 0) - sol.real_value(z);
    });
  });

  c.run("first-factor-turning-point", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const auto traj = abel::first_factor_solution(p, 1.0, {0.0, 3.0});
    const bool halted = !traj.completed() && traj.reached() > 1.0 && traj.reached() < 1.2;
    return outcome("first-factor-turning-point", halted,
                   std::string(oracle::to_string(traj.status())) + " at zeta = " +
                       fmt(traj.reached()));
  });

  c.run("factorized-invariant", [] {
    const EPParams pu = params(0.25, 2.0, 1.0);  // u carries b = 2
    const EPParams pv = params(0.25, 1.0, 1.0);
    const chiellini::DissipativeSolution su(pu), sv(pv);
    const double za = 0.0;
    const double cu = su.real_value(za), cv = sv.real_value(za);
    auto diff = [&](double z) {
      return abel::phi_functions(su.real_value(z), pu).phi1 -
             abel::phi_functions(sv.real_value(z), pv).phi1;
    };
    return grid_report("factorized-invariant", {0.05, 0.9}, 41, 1e-6, [&](double z) {
      const double u = su.real_value(z), v = sv.real_value(z);
      const double phi1 = abel::phi_functions(u, pu).phi1;
      const double psi1 = abel::phi_functions(v, pv).phi1;
      invariant::FactorizedPair f;
      f.theta = u / v;
      f.v = v;
      f.phi1 = phi1;
      f.psi1 = psi1;
      f.integral_diff = oracle::integrate(diff, za, z, 1e-13).value;
      f.b = pu.c;
      f.c = pv.c;
      f.c_u = cu;
      f.c_v = cv;
      const invariant::ErmakovPairState s{u, phi1 * u, v, psi1 * v, pu.c, pv.c};
      return invariant::invariant_via_factorization(f) - invariant::ermakov_invariant(s);
    });
  });
}

// ---------------------------------------------------------------------------
// abel
// ---------------------------------------------------------------------------

ValidationReport route_vs_ivp(const abel::GeneralODECoeffs& coeffs, double u0, double du0,
                              Window span, double tol) {
  const auto direct = abel::second_order_solution(coeffs, u0, du0, span);
  if (!direct.completed()) return outcome("abel-route", false, "second-order IVP halted");
  double u1 = u0;
  for (const auto& s : direct.node_states()) u1 = std::max(u1, s[0]);
  u1 += 1e-3 * std::max(1.0, std::abs(u1));
  const auto route = abel::abel_route_solution(coeffs, u0, du0, u1, span);
  if (!route.path.completed()) {
    return outcome("abel-route", false,
                   std::string("abel route halted: ") + oracle::to_string(route.path.status()));
  }
  return grid_report("abel-route", span, 101, tol, [&](double z) {
    return route.path.component(z, 0) - direct.component(z, 0);
  });
}

void abel_suite(Collector& c) {
  c.run("abel-route-vplus", [] {
    const EPParams p = params(0.25, 1.0, 1.0);
    const chiellini::DissipativeSolution sol(p);
    const auto s = closed_form_state(sol, 0.0);
    return route_vs_ivp(abel::dissipative_coeffs(p), s.v, s.dv, {0.0, 0.9}, 1e-6);
  });
  c.run("abel-route-vminus", [] {
    const EPParams p = params(-0.25, 1.0, 1.0, Sign::Minus);
    const chiellini::DissipativeSolution sol(p);
    const auto s = closed_form_state(sol, 0.6);
    return route_vs_ivp(abel::dissipative_coeffs(p), s.v, s.dv, {0.6, 3.0}, 1e-6);
  });
  c.run("abel-route-general", [] {
    abel::GeneralODECoeffs k;
    k.f0 = [](double) { return 0.05; };
    k.f1 = [](double u) { return 0.1 * u; };
    k.f2 = [](double) { return 0.3; };
    k.f3 = [](double u) { return u; };
    return route_vs_ivp(k, 0.5, 1.0, {0.0, 0.5}, 1e-6);
  });
  c.run("linear-term-map", [] {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    const double a0 = d(rng), a1 = d(rng), b0 = d(rng), b1 = d(rng), c0 = d(rng), d0 = d(rng);
    abel::GeneralODECoeffs k;
    k.f0 = [=](double u) { return a0 + a1 * u; };
    k.f1 = [=](double u) { return b0 + b1 * u; };
    k.f2 = [=](double) { return c0; };
    k.f3 = [=](double u) { return d0 * u; };
    const auto t = abel::remove_linear_term(k, 0.0);
    const auto original = abel::to_abel_rhs(k);
    const auto reduced = t.rhs();
    auto solve = [](const abel::AbelRhs& f, double y0) {
      oracle::IVPProblem prob;
      prob.rhs = [f](double u, const oracle::State& y) { return oracle::State{f(u, y[0])}; };
      prob.y0 = {y0};
      prob.zeta_a = 0.0;
      prob.zeta_b = 1.0;
      prob.rel_tol = 1e-12;
      prob.abs_tol = 1e-14;
      return oracle::integrate_ivp(prob);
    };
    const double y0 = 0.4;
    const auto ty = solve(original, y0);
    const auto th = solve(reduced, t.forward(0.0, y0));
    if (!ty.completed() || !th.completed()) return outcome("linear-term-map", false, "halted");
    return grid_report("linear-term-map", {0.0, 1.0}, 51, 1e-7, [&](double u) {
      return t.backward(u, th.component(u, 0)) - ty.component(u, 0);
    });
  });
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : {Suite::Residual, Suite::Invariant, Suite::Chiellini, Suite::Phase,
                  Suite::Factorization, Suite::Abel, Suite::All}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

const char* to_string(Suite suite) {
  switch (suite) {
    case Suite::Residual: return "residual";
    case Suite::Invariant: return "invariant";
    case Suite::Chiellini: return "chiellini";
    case Suite::Phase: return "phase";
    case Suite::Factorization: return "factorization";
    case Suite::Abel: return "abel";
    case Suite::All: return "all";
  }
  return "?";
}

std::vector<ClosedFormCase> closed_form_cases() {
  std::vector<ClosedFormCase> out = {
      {"pos-unity-plus", params(0.25, 1.0, 1.0, Sign::Plus), {}},
      {"pos-unity-minus", params(0.25, 1.0, 1.0, Sign::Minus), {}},
      {"pos-l1-c05-c12", params(1.0, 0.5, 2.0), {}},
      {"pos-l05-c2-c105-shift", params(0.5, 2.0, 0.5, Sign::Plus, 0.3), {}},
      {"pos-l2-c025", params(2.0, 0.25, 1.0), {}},
      {"neg-unity-minus", params(-0.25, 1.0, 1.0, Sign::Minus), {}},
      {"neg-l1-minus", params(-1.0, 1.0, 1.0, Sign::Minus), {}},
      {"neg-l05-c2-c1m1", params(-0.5, 2.0, -1.0, Sign::Minus), {}},
      {"neg-l4-c1-c13", params(-4.0, 1.0, 3.0, Sign::Minus), {}},
      {"zero-unity", params(0.0, 1.0, 1.0), {}},
      {"zero-cm1-c12", params(0.0, -1.0, 2.0), {}},
      {"zero-c05-shift", params(0.0, 0.5, 0.5, Sign::Plus, 1.0), {}},
  };
  for (auto& c : out) {
    const double l = std::sqrt(std::abs(c.params.lambda2));
    const double half = c.params.lambda2 == 0.0
                            ? 5.0
                            : 2.0 * std::numbers::pi / (2.0 * std::numbers::sqrt2 * l);
    c.window = {c.params.zeta0 - half, c.params.zeta0 + half};
  }
  return out;
}

oracle::ValidationReport closed_form_residual(const ClosedFormCase& c, std::size_t samples,
                                              double tolerance) {
  const chiellini::DissipativeSolution sol(c.params);
  const EPParams p = c.params;
  auto square = [&](double z) {
    const ComplexValue w = sol.square(z);
    return w.imag() == 0.0 ? w.real() : kNaN;
  };
  oracle::ScanOptions opts;
  opts.skip = [&](double z, double v, double) {
    return sol.square_slope(z) <= 0.0 || chiellini::radicand(v, p) < radicand_floor(p);
  };
  auto res = [&](double, double v, double dv, double d2v) {
    return chiellini::dissipative_residual(p, v, dv, d2v);
  };
  return oracle::residual_scan_power("closed-form-" + c.id, square, 2, res, c.window, samples,
                                     tolerance, opts);
}

ClosedFormState closed_form_state(const chiellini::DissipativeSolution& sol, double zeta) {
  const double v = sol.real_value(zeta);
  if (!std::isfinite(v) || v == 0.0) throw DomainError("closed_form_state: v not real or zero");
  return {v, sol.square_slope(zeta) / (2.0 * v)};
}

std::vector<CaseResult> run_suite(Suite suite, const RunOptions& options) {
  std::vector<CaseResult> out;
  auto one = [&](Suite s, void (*fill)(Collector&)) {
    if (suite != Suite::All && suite != s) return;
    std::vector<CaseResult> part;
    Collector c{to_string(s), &part};
    fill(c);
    std::stable_sort(part.begin(), part.end(),
                     [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
    out.insert(out.end(), part.begin(), part.end());
  };
  one(Suite::Residual, residual_suite);
  one(Suite::Invariant, invariant_suite);
  one(Suite::Chiellini, chiellini_suite);
  one(Suite::Phase, phase_suite);
  one(Suite::Factorization, factorization_suite);
  one(Suite::Abel, abel_suite);
  if (options.tolerance_override) {
    for (auto& r : out) {
      r.report.tolerance = *options.tolerance_override;
      r.report.finalize();
    }
  }
  return out;
}

bool all_passed(const std::vector<CaseResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CaseResult& r) { return r.report.passed; });
}

void write_report(std::ostream& out, const std::vector<CaseResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << r.suite << ' ' << r.id << ' ' << io::format_number(r.report.max_residual) << ' '
        << io::format_number(r.report.tolerance) << ' ' << (r.report.passed ? "PASS" : "FAIL");
    if (!r.report.passed) {
      out << " # worst at zeta = " << io::format_number(r.report.worst_zeta);
      if (!r.report.note.empty()) out << "; " << r.report.note;
    }
    out << '\n';
    if (!r.report.passed) ++failed;
  }
  out << "# " << results.size() << " cases, " << results.size() - failed << " passed, " << failed
      << " failed\n";
}

}  // namespace eplab::validation
