#include "eplab/series_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "eplab/errors.hpp"

namespace eplab::io {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_header(const SampleSeries& s) {
  std::string h = "zeta";
  if (s.curves.size() == 1) return h + ",re,im";
  for (const auto& c : s.curves) h += ",re_" + c.name + ",im_" + c.name;
  return h;
}

void write_csv(std::ostream& out, const SampleSeries& s) {
  for (const auto& c : s.curves) {
    if (c.values.size() != s.zeta.size()) throw InvalidParameter("write_csv: ragged series");
  }
  for (const auto& [k, v] : s.metadata) out << "# " << k << ": " << v << '\n';
  out << csv_header(s) << '\n';
  for (std::size_t i = 0; i < s.zeta.size(); ++i) {
    out << format_number(s.zeta[i]);
    for (const auto& c : s.curves) {
      out << ',' << format_number(c.values[i].real()) << ',' << format_number(c.values[i].imag());
    }
    out << '\n';
  }
}

namespace {

const char* kPalette[] = {"#1f4fd8", "#d8261f", "#1a9e3a", "#8a2be2"};

}  // namespace

void write_svg(std::ostream& out, const SampleSeries& s, const std::string& title) {
  constexpr double W = 720, H = 420, M = 40;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  for (const auto& c : s.curves) {
    for (const auto& v : c.values) {
      for (double y : {v.real(), v.imag()}) {
        if (std::isfinite(y)) {
          ymin = std::min(ymin, y);
          ymax = std::max(ymax, y);
        }
      }
    }
  }
  if (!(ymax > ymin)) {
    ymin = std::isfinite(ymin) ? ymin - 1 : -1;
    ymax = ymin + 2;
  }
  const double xmin = s.zeta.empty() ? 0.0 : s.zeta.front();
  const double xmax = s.zeta.empty() ? 1.0 : s.zeta.back();
  auto px = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto py = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << M << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">" << title
      << "</text>\n";
  out << "<rect x=\"" << M << "\" y=\"" << M << "\" width=\"" << W - 2 * M << "\" height=\""
      << H - 2 * M << "\" fill=\"none\" stroke=\"#888\"/>\n";
  if (ymin < 0 && ymax > 0) {
    out << "<line x1=\"" << M << "\" x2=\"" << W - M << "\" y1=\"" << format_number(py(0))
        << "\" y2=\"" << format_number(py(0)) << "\" stroke=\"#ccc\"/>\n";
  }
  std::size_t colour = 0;
  for (const auto& c : s.curves) {
    const char* stroke = kPalette[colour++ % std::size(kPalette)];
    for (int part = 0; part < 2; ++part) {
      std::string points;
      auto flush = [&] {
        if (!points.empty()) {
          out << "<polyline fill=\"none\" stroke=\"" << stroke << "\""
              << (part ? " stroke-dasharray=\"4 3\"" : "") << " points=\"" << points << "\"/>\n";
          points.clear();
        }
      };
      for (std::size_t i = 0; i < s.zeta.size(); ++i) {
        const double y = part ? c.values[i].imag() : c.values[i].real();
        if (!std::isfinite(y)) {
          flush();
          continue;
        }
        points += format_number(px(s.zeta[i])) + "," + format_number(py(y)) + " ";
      }
      flush();
    }
  }
  out << "</svg>\n";
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw InvalidParameter("linspace: need at least two points");
  std::vector<double> out(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace eplab::io
