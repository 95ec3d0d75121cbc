#include <algorithm>
#include <cstdio>
#include <string>

#include "apxpat/error.hpp"
#include "apxpat/io.hpp"

namespace apxpat::io {
namespace {

constexpr double kWidth = 800.0;
constexpr double kMargin = 40.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string emit_svg(const PointSet& s, const SvgOptions& options) {
  const std::size_t d = s.dim();
  if (d > 2) throw Error(ErrorKind::DimensionMismatch, "SVG output supports 1-D and 2-D sets only");
  for (const Point& a : options.anchors) {
    if (a.dim() != d) throw Error(ErrorKind::DimensionMismatch, "anchor dimension differs");
  }
  std::vector<bool> hot(s.size(), false);
  for (std::size_t i : options.highlight) {
    if (i >= s.size()) throw Error(ErrorKind::InvalidArgument, "highlight index out of range");
    hot[i] = true;
  }

  std::vector<double> lo(s.lower().begin(), s.lower().end());
  std::vector<double> hi(s.upper().begin(), s.upper().end());
  for (const Point& a : options.anchors) {
    for (std::size_t ax = 0; ax < d; ++ax) {
      lo[ax] = std::min(lo[ax], a[ax]);
      hi[ax] = std::max(hi[ax], a[ax]);
    }
  }
  double span = 0.0;
  for (std::size_t ax = 0; ax < d; ++ax) span = std::max(span, hi[ax] - lo[ax]);
  if (!(span > 0.0)) span = 1.0;
  const double scale = (kWidth - 2.0 * kMargin) / span;
  const double height = d == 1 ? 120.0 : kWidth;
  const double axis_y = height / 2.0;
  const double marker = std::max(1.5, std::min(6.0, 0.3 * scale));

  auto sx = [&](const Point& p) { return kMargin + (p[0] - lo[0]) * scale; };
  // SVG y grows downward; flip so larger coordinates appear higher.
  auto sy = [&](const Point& p) {
    return d == 1 ? axis_y : height - kMargin - (p[1] - lo[1]) * scale;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth) +
         "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(height) +
         "\">\n";
  if (!options.title.empty()) out += "<title>" + escape(options.title) + "</title>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(height) +
         "\" fill=\"white\"/>\n";
  if (d == 1) {
    out += "<line class=\"axis\" x1=\"" + num(kMargin) + "\" y1=\"" + num(axis_y) + "\" x2=\"" +
           num(kWidth - kMargin) + "\" y2=\"" + num(axis_y) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }

  for (const Point& a : options.anchors) {
    if (d == 1) {
      out += "<line class=\"anchor\" x1=\"" + num(sx(a)) + "\" y1=\"" + num(axis_y - 18.0) +
             "\" x2=\"" + num(sx(a)) + "\" y2=\"" + num(axis_y + 18.0) +
             "\" stroke=\"black\" stroke-width=\"3\"/>\n";
    } else {
      out += "<circle class=\"anchor\" cx=\"" + num(sx(a)) + "\" cy=\"" + num(sy(a)) +
             "\" r=\"" + num(marker * 1.6) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Point& p = s[i];
    if (hot[i]) {
      out += "<circle class=\"hit\" cx=\"" + num(sx(p)) + "\" cy=\"" + num(sy(p)) + "\" r=\"" +
             num(marker) + "\" fill=\"black\"/>\n";
    } else {
      out += "<circle class=\"point\" cx=\"" + num(sx(p)) + "\" cy=\"" + num(sy(p)) + "\" r=\"" +
             num(marker * 0.6) + "\" fill=\"#9a9a9a\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace apxpat::io
