#pragma once

// Named presets for the nine published plots and the series they produce.

#include <string>
#include <string_view>
#include <vector>

#include "eplab/chiellini.hpp"
#include "eplab/invariant_theorem.hpp"
#include "eplab/reid.hpp"
#include "eplab/series_io.hpp"

namespace eplab::figures {

enum class FigureKind {
  Pair,                // u (dissipative) and v (undamped), complex values
  PairModulusSquare,   // |u|^2 and |v|^2
  Damping,             // g along the closed-form v of the dissipative equation
};

struct FigurePreset {
  int id = 0;
  std::string label;        // fig-e1 ... fig-e8, fig-e0
  FigureKind kind = FigureKind::Pair;
  linear::Branch branch = linear::Branch::Positive;
  int m = 2;
  double lambda2 = 0.25;
  chiellini::Sign sign = chiellini::Sign::Plus;
  double zeta_min = 0.0;
  double zeta_max = 6.0;
  std::size_t samples = 601;
  std::string description;
};

const std::vector<FigurePreset>& figure_presets();

/// Appends the curve g of the dissipative equation along its closed-form v,
/// sampled on s.zeta through w = v^2. NaN where w is not real or g is
/// undefined (negative radicand).
void append_damping(io::SampleSeries& s, const chiellini::EPParams& p);

/// Appends the curves u (from u_m) and v (from v_m) sampled on s.zeta. A u
/// sample whose phase cannot be evaluated is stored as NaN.
void append_reid_pair(io::SampleSeries& s, const reid::ReidParams& rp,
                      const invariant::ThetaConstants& k, chiellini::Sign sign,
                      bool modulus_square);

/// Accepts "1".."9" or the label. Throws InvalidParameter otherwise.
const FigurePreset& find_figure(std::string_view key);

io::SampleSeries build_figure(const FigurePreset& preset);

/// Same as build_figure with another window / sample count.
io::SampleSeries build_figure(const FigurePreset& preset, double zeta_min, double zeta_max,
                              std::size_t samples);

}  // namespace eplab::figures
