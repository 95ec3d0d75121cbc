#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "apxpat/error.hpp"
#include "apxpat/io.hpp"

namespace apxpat::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

PointSet parse_pointset(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<Point> pts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
      const std::size_t sep = line.find(' ', start);
      const std::string_view tok =
          line.substr(start, sep == std::string_view::npos ? std::string_view::npos : sep - start);
      if (tok.empty()) throw ParseError(line_no, "empty field");
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "not a number: '" + std::string(tok) + "'");
      }
      if (!std::isfinite(v)) throw ParseError(line_no, "non-finite value");
      values.push_back(v);
      if (sep == std::string_view::npos) break;
      start = sep + 1;
    }

    if (dim == 0) {
      if (values.size() != 1 || values[0] < 1.0 || values[0] != std::floor(values[0])) {
        throw ParseError(line_no, "expected the dimension as a single positive integer");
      }
      dim = static_cast<std::size_t>(values[0]);
      continue;
    }
    if (values.size() != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " coordinates, got " +
                                    std::to_string(values.size()));
    }
    pts.emplace_back(std::move(values));
  }
  if (dim == 0) throw ParseError(line_no, "missing dimension line");
  if (pts.empty()) throw ParseError(line_no, "no points");
  return PointSet(std::move(pts));
}

std::string write_pointset(const PointSet& s) {
  std::string out = std::to_string(s.dim()) + "\n";
  for (const Point& p : s) {
    for (std::size_t a = 0; a < p.dim(); ++a) {
      if (a > 0) out += ' ';
      out += format_double(p[a]);
    }
    out += '\n';
  }
  return out;
}

PointSet read_pointset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pointset(buf.str());
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
}

}  // namespace apxpat::io
