#pragma once

// SampleSeries and its CSV / SVG renderings. Output is byte-stable: numbers
// go through std::to_chars (17 significant digits, '.' separator, no locale)
// and lines end in '\n'.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eplab/complex.hpp"

namespace eplab::io {

struct Curve {
  std::string name;  // "u", "v", ... (empty for a single curve)
  std::vector<ComplexValue> values;
};

struct SampleSeries {
  std::vector<double> zeta;
  std::vector<Curve> curves;
  std::vector<std::pair<std::string, std::string>> metadata;  // "# key: value"

  void add_meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
};

/// 17 significant digits in the %.17g form; "nan" and "inf" spelled out.
std::string format_number(double x);

/// `zeta,re,im` for one curve, `zeta,re_u,im_u,re_v,im_v` for two, and the
/// same pattern for more.
std::string csv_header(const SampleSeries& s);

void write_csv(std::ostream& out, const SampleSeries& s);
void write_svg(std::ostream& out, const SampleSeries& s, const std::string& title);

/// Evenly spaced grid with both endpoints.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace eplab::io
