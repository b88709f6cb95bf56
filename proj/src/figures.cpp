#include "eplab/figures.hpp"

#include <cmath>
#include <sstream>

#include "eplab/errors.hpp"
#include "eplab/reid.hpp"

namespace eplab::figures {

using linear::Branch;
using chiellini::Sign;

// The captions give no axis ranges: [0, 6] throughout, [-3, 3] for the
// algebraic pair which is symmetric about the origin.
const std::vector<FigurePreset>& figure_presets() {
  static const std::vector<FigurePreset> presets = {
      {1, "fig-e1", FigureKind::Pair, Branch::Negative, 2, -0.25, Sign::Minus, 0, 6, 601,
       "u_- (dissipative) and v_-, m = 2, unit constants"},
      {2, "fig-e2", FigureKind::PairModulusSquare, Branch::Negative, 3, -0.25, Sign::Minus, 0, 6,
       601, "|u_-|^2 and |v_-|^2, m = 3, unit constants"},
      {3, "fig-e3", FigureKind::Pair, Branch::Positive, 2, 0.25, Sign::Plus, 0, 6, 601,
       "u_+ (dissipative) and v_+, m = 2, unit constants"},
      {4, "fig-e4", FigureKind::PairModulusSquare, Branch::Positive, 3, 0.25, Sign::Plus, 0, 6,
       601, "|u_+|^2 and |v_+|^2, m = 3, unit constants"},
      {5, "fig-e5", FigureKind::PairModulusSquare, Branch::Positive, 4, 0.25, Sign::Plus, 0, 6,
       601, "|u_+|^2 and |v_+|^2, m = 4, unit constants"},
      {6, "fig-e0", FigureKind::Pair, Branch::Zero, 2, 0.0, Sign::Plus, -3, 3, 601,
       "u_0 (dissipative) and v_0, m = 2, unit constants"},
      {7, "fig-e6", FigureKind::Damping, Branch::Negative, 2, -0.25, Sign::Plus, 0, 6, 601,
       "g(zeta) along v_-, lambda^2 = -1/4, c = c1 = 1"},
      {8, "fig-e7", FigureKind::Damping, Branch::Positive, 2, 0.25, Sign::Plus, 0, 6, 601,
       "g(zeta) along v_+, lambda^2 = 1/4, c = c1 = 1"},
      {9, "fig-e8", FigureKind::Damping, Branch::Zero, 2, 0.0, Sign::Plus, 0, 6, 601,
       "g(zeta) along v_0, lambda^2 = 0, c = c1 = 1"},
  };
  return presets;
}

void append_damping(io::SampleSeries& s, const chiellini::EPParams& p) {
  const chiellini::DissipativeSolution v(p);
  io::Curve g{"g", {}};
  for (double z : s.zeta) {
    const ComplexValue w = v.square(z);
    const double val = is_real(w) ? chiellini::g_of_square(w.real(), p) : std::nan("");
    g.values.emplace_back(val, 0.0);
  }
  s.curves.push_back(std::move(g));
}

void append_reid_pair(io::SampleSeries& s, const reid::ReidParams& rp,
                      const invariant::ThetaConstants& k, Sign sign, bool modulus_square) {
  io::Curve u{"u", {}}, v{"v", {}};
  for (double z : s.zeta) {
    ComplexValue uz, vz;
    try {
      uz = reid::u_m(rp, k, sign, z);
    } catch (const Error&) {
      uz = {std::nan(""), std::nan("")};
    }
    vz = reid::v_m(rp, z);
    if (modulus_square) {
      uz = std::norm(uz);
      vz = std::norm(vz);
    }
    u.values.push_back(uz);
    v.values.push_back(vz);
  }
  s.curves.push_back(std::move(u));
  s.curves.push_back(std::move(v));
}

const FigurePreset& find_figure(std::string_view key) {
  for (const auto& p : figure_presets()) {
    if (key == p.label || key == std::to_string(p.id)) return p;
  }
  throw InvalidParameter("unknown figure '" + std::string(key) + "' (use 1-9 or fig-eN)");
}

io::SampleSeries build_figure(const FigurePreset& preset) {
  return build_figure(preset, preset.zeta_min, preset.zeta_max, preset.samples);
}

io::SampleSeries build_figure(const FigurePreset& preset, double zeta_min, double zeta_max,
                              std::size_t samples) {
  io::SampleSeries s;
  s.zeta = io::linspace(zeta_min, zeta_max, samples);
  s.add_meta("figure", std::to_string(preset.id) + " (" + preset.label + ")");
  s.add_meta("description", preset.description);
  {
    std::ostringstream w;
    w << "[" << io::format_number(zeta_min) << ", " << io::format_number(zeta_max) << "], "
      << samples << " samples (no range in the caption; preset default)";
    s.add_meta("window", w.str());
  }

  if (preset.kind == FigureKind::Damping) {
    chiellini::EPParams p;
    p.lambda2 = preset.lambda2;
    p.c = 1.0;
    p.c1 = 1.0;
    p.sign = preset.sign;
    s.add_meta("parameters", "lambda2=" + io::format_number(p.lambda2) +
                                 " c=1 c1=1 k=-2 zeta0=0 sign=" + chiellini::to_string(p.sign));
    append_damping(s, p);
    return s;
  }

  const auto rp = reid::unity_params(preset.branch, preset.m);
  const auto k = reid::unity_theta_constants(preset.branch);
  {
    std::ostringstream meta;
    meta << "m=" << preset.m << " lambda=1/2 a=b=c~=1 theta(I,b,c)=(" << k.invariant << ","
         << k.b << "," << k.c << ") sign=" << chiellini::to_string(preset.sign);
    s.add_meta("parameters", meta.str());
  }
  append_reid_pair(s, rp, k, preset.sign, preset.kind == FigureKind::PairModulusSquare);
  return s;
}

}  // namespace eplab::figures
