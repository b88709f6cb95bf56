#include "eplab/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eplab/errors.hpp"
#include "eplab/figures.hpp"
#include "eplab/invariant_theorem.hpp"
#include "eplab/reid.hpp"
#include "eplab/series_io.hpp"
#include "eplab/validation.hpp"

namespace eplab::cli {
namespace {

using chiellini::Sign;
using linear::Branch;

/// Bad combination of otherwise well-formed arguments.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sample could not be evaluated.
class EvaluationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvalConfig {
  std::string family = "chiellini";
  std::string branch;  // empty: from lambda2
  int m = 2;
  std::optional<double> lambda2;
  double c = 1.0;
  double b = 1.0;
  double c1 = 1.0;
  double gamma = 1.0;
  double k = -2.0;
  double zeta0 = 0.0;
  std::string sign = "plus";
  std::string theta_sign;  // empty: same as sign
  double ctilde = 1.0;
  double a_amp = 1.0;
  std::optional<double> theta_i, theta_b, theta_c;
  double zeta_min = 0.0;
  double zeta_max = 6.0;
  std::size_t samples = 601;
  std::string out;
  std::string format = "csv";
};

Branch parse_branch(const std::string& s) {
  if (s == "neg") return Branch::Negative;
  if (s == "zero") return Branch::Zero;
  return Branch::Positive;
}

Sign parse_sign(const std::string& s) { return s == "minus" ? Sign::Minus : Sign::Plus; }

/// Resolves lambda2 and the branch, which must agree when both are given.
double resolved_lambda2(const EvalConfig& cfg) {
  if (cfg.lambda2) {
    if (!std::isfinite(*cfg.lambda2)) throw UsageError("--lambda2 must be finite");
    if (!cfg.branch.empty() && parse_branch(cfg.branch) != linear::branch_of(*cfg.lambda2)) {
      throw UsageError("--branch " + cfg.branch + " does not match --lambda2 " +
                       io::format_number(*cfg.lambda2));
    }
    return *cfg.lambda2;
  }
  if (cfg.branch.empty()) return 0.25;
  switch (parse_branch(cfg.branch)) {
    case Branch::Negative: return -0.25;
    case Branch::Zero: return 0.0;
    case Branch::Positive: break;
  }
  return 0.25;
}

void check_window(const EvalConfig& cfg) {
  if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
  if (!(std::isfinite(cfg.zeta_min) && std::isfinite(cfg.zeta_max)) ||
      !(cfg.zeta_min < cfg.zeta_max)) {
    throw UsageError("--zeta-min must be below --zeta-max");
  }
}

chiellini::EPParams ep_params(const EvalConfig& cfg) {
  chiellini::EPParams p;
  p.lambda2 = resolved_lambda2(cfg);
  p.c = cfg.c;
  p.c1 = cfg.c1;
  p.k = cfg.k;
  p.zeta0 = cfg.zeta0;
  p.sign = parse_sign(cfg.sign);
  return p;
}

reid::ReidParams reid_params(const EvalConfig& cfg) {
  const double l2 = resolved_lambda2(cfg);
  reid::ReidParams rp;
  rp.m = cfg.m;
  rp.branch = linear::branch_of(l2);
  rp.lambda = std::sqrt(std::abs(l2));
  rp.a_amp = cfg.a_amp;
  rp.c_tilde = cfg.ctilde;
  reid::validate(rp);
  return rp;
}

std::string zeta_text(double z) { return io::format_number(z); }

/// Samples f over the grid into a curve; a library error or a non-finite
/// value stops the command with the offending zeta.
io::Curve sample_curve(const std::string& name, const std::vector<double>& grid,
                       const std::function<ComplexValue(double)>& f) {
  io::Curve curve{name, {}};
  curve.values.reserve(grid.size());
  for (double z : grid) {
    ComplexValue v;
    try {
      v = f(z);
    } catch (const Error& e) {
      throw EvaluationFailure("evaluation failed at zeta = " + zeta_text(z) + ": " + e.what());
    }
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw EvaluationFailure("non-finite value" + (name.empty() ? "" : " of " + name) +
                              " at zeta = " + zeta_text(z));
    }
    curve.values.push_back(v);
  }
  return curve;
}

std::string params_meta(const EvalConfig& cfg, double lambda2) {
  std::ostringstream m;
  m << "lambda2=" << io::format_number(lambda2) << " c=" << io::format_number(cfg.c)
    << " c1=" << io::format_number(cfg.c1) << " k=" << io::format_number(cfg.k)
    << " zeta0=" << io::format_number(cfg.zeta0) << " sign=" << cfg.sign;
  return m.str();
}

io::SampleSeries eval_series(const EvalConfig& cfg) {
  check_window(cfg);
  io::SampleSeries s;
  s.zeta = io::linspace(cfg.zeta_min, cfg.zeta_max, cfg.samples);
  s.add_meta("family", cfg.family);

  if (cfg.family == "sep") {
    const double l2 = resolved_lambda2(cfg);
    const Branch br = linear::branch_of(l2);
    const double lambda = std::sqrt(std::abs(l2));
    s.add_meta("parameters", "lambda2=" + io::format_number(l2) + " c=" + io::format_number(cfg.c) +
                                 " v(0)=1 v'(0)=0");
    s.curves.push_back(sample_curve(
        "", s.zeta, [&](double z) { return linear::sep_solution(br, lambda, cfg.c, z); }));
  } else if (cfg.family == "chiellini") {
    const auto p = ep_params(cfg);
    const chiellini::DissipativeSolution sol(p);
    s.add_meta("parameters", params_meta(cfg, p.lambda2));
    s.curves.push_back(sample_curve("", s.zeta, [&](double z) { return sol(z); }));
  } else if (cfg.family == "reid") {
    const auto rp = reid_params(cfg);
    auto k = reid::unity_theta_constants(rp.branch);
    if (cfg.theta_i) k.invariant = *cfg.theta_i;
    if (cfg.theta_b) k.b = *cfg.theta_b;
    if (cfg.theta_c) k.c = *cfg.theta_c;
    const Sign sign = parse_sign(cfg.sign);
    std::ostringstream meta;
    meta << "m=" << rp.m << " lambda=" << io::format_number(rp.lambda)
         << " a=" << io::format_number(rp.a_amp) << " c~=" << io::format_number(rp.c_tilde)
         << " theta(I,b,c)=(" << io::format_number(k.invariant) << "," << io::format_number(k.b)
         << "," << io::format_number(k.c) << ") sign=" << cfg.sign;
    s.add_meta("parameters", meta.str());
    s.curves.push_back(
        sample_curve("u", s.zeta, [&](double z) { return reid::u_m(rp, k, sign, z); }));
    s.curves.push_back(sample_curve("v", s.zeta, [&](double z) { return reid::v_m(rp, z); }));
  } else {  // theorem
    const auto p = ep_params(cfg);
    const Sign ts = cfg.theta_sign.empty() ? p.sign : parse_sign(cfg.theta_sign);
    const invariant::GeneralSolutionU u(cfg.gamma, p, cfg.b, ts);
    s.add_meta("parameters", params_meta(cfg, p.lambda2) + " gamma=" + io::format_number(cfg.gamma) +
                                 " b=" + io::format_number(cfg.b) +
                                 " theta_sign=" + chiellini::to_string(ts));
    s.curves.push_back(sample_curve("u", s.zeta, [&](double z) { return u(z); }));
    s.curves.push_back(sample_curve("v", s.zeta, [&](double z) { return u.amplitude()(z); }));
  }
  return s;
}

io::SampleSeries phase_series(const EvalConfig& cfg) {
  check_window(cfg);
  io::SampleSeries s;
  s.zeta = io::linspace(cfg.zeta_min, cfg.zeta_max, cfg.samples);
  s.add_meta("family", cfg.family);
  if (cfg.family == "reid") {
    const auto rp = reid_params(cfg);
    s.add_meta("phase", "Theta_m, closed form (quadrature from a reference point if degenerate)");
    s.curves.push_back(
        sample_curve("", s.zeta, [&](double z) { return ComplexValue(reid::theta_m(rp, z)); }));
  } else if (cfg.family == "theorem") {
    const auto p = ep_params(cfg);
    const invariant::GeneralSolutionU u(cfg.gamma, p, cfg.b);
    s.add_meta("phase", "integral of v_gamma^-2 from zeta = 0");
    s.curves.push_back(
        sample_curve("", s.zeta, [&](double z) { return ComplexValue(u.phase(z)); }));
  } else {
    throw UsageError("phase is defined for --family reid or theorem");
  }
  return s;
}

io::SampleSeries gfunc_series(const EvalConfig& cfg) {
  check_window(cfg);
  if (cfg.family != "chiellini") throw UsageError("gfunc is defined for --family chiellini");
  const auto p = ep_params(cfg);
  io::SampleSeries s;
  s.zeta = io::linspace(cfg.zeta_min, cfg.zeta_max, cfg.samples);
  s.add_meta("family", "chiellini");
  s.add_meta("parameters", params_meta(cfg, p.lambda2));
  s.add_meta("g", "along the closed-form v; nan where v^2 is not real or the radicand is negative");
  figures::append_damping(s, p);
  return s;
}

void emit(const io::SampleSeries& s, const std::string& format, const std::string& title,
          const std::string& path, std::ostream& out) {
  auto write = [&](std::ostream& o) {
    if (format == "svg") {
      io::write_svg(o, s, title);
    } else {
      io::write_csv(o, s);
    }
  };
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  write(f);
  if (!f) throw UsageError("write to '" + path + "' failed");
}

void add_eval_options(CLI::App& cmd, EvalConfig& cfg) {
  cmd.add_option("--family", cfg.family, "Solution family")
      ->check(CLI::IsMember({"sep", "chiellini", "reid", "theorem"}));
  cmd.add_option("--branch", cfg.branch, "Sign of lambda^2 (neg, zero, pos)")
      ->check(CLI::IsMember({"neg", "zero", "pos"}));
  cmd.add_option("--m", cfg.m, "Reid order (>= 2)");
  cmd.add_option("--lambda2", cfg.lambda2, "lambda^2, any sign");
  cmd.add_option("--c", cfg.c, "Inverse-cube strength c");
  cmd.add_option("--b", cfg.b, "Inverse-cube strength b of the u equation (theorem)");
  cmd.add_option("--c1", cfg.c1, "Abel constant c1 (the invariant for theorem)");
  cmd.add_option("--gamma", cfg.gamma, "c1 of the amplitude v_gamma (theorem)");
  cmd.add_option("--k", cfg.k, "Chiellini constant");
  cmd.add_option("--zeta0", cfg.zeta0, "Shift of the closed form");
  cmd.add_option("--sign", cfg.sign, "Upper (plus) or lower (minus) stacked sign")
      ->check(CLI::IsMember({"plus", "minus"}));
  cmd.add_option("--theta-sign", cfg.theta_sign, "Sign of the theta branch (theorem)")
      ->check(CLI::IsMember({"plus", "minus"}));
  cmd.add_option("--ctilde", cfg.ctilde, "Reid constant c~");
  cmd.add_option("--a", cfg.a_amp, "Reid amplitude a");
  cmd.add_option("--theta-i", cfg.theta_i, "Theta constant I (reid)");
  cmd.add_option("--theta-b", cfg.theta_b, "Theta constant b (reid)");
  cmd.add_option("--theta-c", cfg.theta_c, "Theta constant c (reid)");
  cmd.add_option("--zeta-min", cfg.zeta_min, "Window start");
  cmd.add_option("--zeta-max", cfg.zeta_max, "Window end");
  cmd.add_option("--samples", cfg.samples, "Grid points, endpoints included");
  cmd.add_option("--out", cfg.out, "Output file (default: stdout)");
  cmd.add_option("--format", cfg.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
}

}  // namespace

std::optional<double> parse_tolerance(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) return std::nullopt;
  if (!std::isfinite(v) || !(v > 0.0)) return std::nullopt;
  return v;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
        std::optional<std::string_view> env_tol) {
  CLI::App app{"Ermakov-Pinney solution families with Chiellini damping", "ep_lab"};
  app.require_subcommand(1);

  EvalConfig cfg;
  auto* eval = app.add_subcommand("eval", "Sample a solution family to CSV or SVG");
  add_eval_options(*eval, cfg);
  auto* phase = app.add_subcommand("phase", "Sample a Milne phase (reid or theorem)");
  add_eval_options(*phase, cfg);
  auto* gfunc = app.add_subcommand("gfunc", "Sample the damping g along the closed-form v");
  add_eval_options(*gfunc, cfg);

  std::string figure_id;
  std::string out_dir = ".";
  std::string figure_format = "csv";
  auto* figure = app.add_subcommand("figure", "Write the series of one figure preset");
  figure->add_option("id", figure_id, "1-9 or fig-eN")->required();
  figure->add_option("--out-dir", out_dir, "Directory for <label>.csv / <label>.svg");
  figure->add_option("--format", figure_format, "csv or svg")
      ->check(CLI::IsMember({"csv", "svg"}));

  std::string suite_name = "all";
  std::string report_path;
  auto* validate = app.add_subcommand("validate", "Run validation suites");
  validate->add_option("--suite", suite_name, "residual, invariant, chiellini, phase, "
                                              "factorization, abel or all")
      ->check(CLI::IsMember({"residual", "invariant", "chiellini", "phase", "factorization",
                             "abel", "all"}));
  validate->add_option("--out", report_path, "Report file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed() || phase->parsed() || gfunc->parsed()) {
      io::SampleSeries s;
      std::string title;
      if (eval->parsed()) {
        s = eval_series(cfg);
        title = "eval " + cfg.family;
      } else if (phase->parsed()) {
        s = phase_series(cfg);
        title = "phase " + cfg.family;
      } else {
        s = gfunc_series(cfg);
        title = "g along v";
      }
      emit(s, cfg.format, title, cfg.out, out);
      return kExitOk;
    }

    if (figure->parsed()) {
      const auto& preset = figures::find_figure(figure_id);
      const auto s = figures::build_figure(preset);
      std::filesystem::create_directories(out_dir);
      const auto path = (std::filesystem::path(out_dir) / (preset.label + "." + figure_format));
      emit(s, figure_format, preset.label + ": " + preset.description, path.string(), out);
      out << path.string() << '\n';
      return kExitOk;
    }

    validation::RunOptions opts;
    if (env_tol) {
      opts.tolerance_override = parse_tolerance(*env_tol);
      if (!opts.tolerance_override) {
        err << "ep_lab: EP_LAB_TOL='" << *env_tol << "' is not a positive decimal number\n";
        return kExitUsage;
      }
    }
    const auto suite = *validation::parse_suite(suite_name);
    const auto results = validation::run_suite(suite, opts);
    if (report_path.empty()) {
      validation::write_report(out, results);
    } else {
      std::ofstream f(report_path, std::ios::binary);
      if (!f) throw UsageError("cannot open '" + report_path + "' for writing");
      validation::write_report(f, results);
    }
    return validation::all_passed(results) ? kExitOk : kExitFailure;
  } catch (const UsageError& e) {
    err << "ep_lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "ep_lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "ep_lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EvaluationFailure& e) {
    err << "ep_lab: " << e.what() << '\n';
    return kExitFailure;
  } catch (const Error& e) {
    err << "ep_lab: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace eplab::cli
