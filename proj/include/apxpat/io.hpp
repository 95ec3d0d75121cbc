#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "apxpat/bounds.hpp"
#include "apxpat/collinear.hpp"
#include "apxpat/geometry.hpp"
#include "apxpat/search.hpp"
#include "apxpat/verifier.hpp"

namespace apxpat::io {

inline constexpr int kSchemaVersion = 1;

/// Text point-set format: '#' comment lines, then a line holding the
/// dimension d, then one line of d space-separated numbers per point.
PointSet parse_pointset(std::string_view text);

/// Shortest round-trip decimal form for every coordinate.
std::string write_pointset(const PointSet& s);

PointSet read_pointset_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const Schedule& s);
nlohmann::json to_json(const VerifyResult& v);
nlohmann::json to_json(const CollinearCheck& c);
nlohmann::json to_json(const CollinearSearch& c);
nlohmann::json to_json(const SearchOutcome& o, bool include_trace);

struct SvgOptions {
  std::vector<std::size_t> highlight;
  std::vector<Point> anchors;
  std::string title;
};

/// Planar or linear scatter plot. Found points are filled markers, pattern
/// anchors open circles (2-D) or tick bars (1-D). Output is byte-stable.
std::string emit_svg(const PointSet& s, const SvgOptions& options = {});

}  // namespace apxpat::io
