#pragma once

#include <cmath>
#include <string>

#include "apxpat/error.hpp"
#include "apxpat/search.hpp"

namespace apxpat::detail {

inline void check_search_params(double eps, double delta) {
  if (!(eps > 0.0) || eps > 1.0 / 3.0) throw Error(ErrorKind::Domain, "eps must lie in (0, 1/3]");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::Domain, "separation delta must be positive");
  }
}

inline void check_separation(const PointSet& s, double delta) {
  if (!is_separated(s, delta * (1.0 - kFeasibilityTol))) {
    throw Error(ErrorKind::InsufficientSeparation,
                "input is not " + std::to_string(delta) + "-separated");
  }
}

inline AxisBox initial_box(const PointSet& s, const SearchOptions& options) {
  const std::size_t d = s.dim();
  if (options.low && options.low->dim() != d) {
    throw Error(ErrorKind::DimensionMismatch, "box corner dimension differs from input");
  }
  const Point low = options.low.value_or(s.lower());
  double tight = 0.0;
  for (std::size_t a = 0; a < d; ++a) tight = std::max(tight, s.upper()[a] - low[a]);
  double side = tight;
  if (options.length) {
    if (!(*options.length > 0.0) || !std::isfinite(*options.length)) {
      throw Error(ErrorKind::Domain, "box length must be positive");
    }
    side = options.low ? *options.length : std::max(*options.length, tight);
  }
  if (!(side > 0.0)) side = 1.0;
  for (const Point& p : s) {
    for (std::size_t a = 0; a < d; ++a) {
      const double slack = 1e-12 * std::max(1.0, std::abs(side));
      if (p[a] < low[a] - slack || p[a] > low[a] + side + slack) {
        throw Error(ErrorKind::InvalidArgument, "input point lies outside the search box");
      }
    }
  }
  return AxisBox{low, side};
}

inline SearchWarnings warnings_for(const PointSet& s, const AxisBox& box, const Schedule& sched) {
  SearchWarnings w;
  w.below_threshold = box.side < sched.threshold;
  w.below_density = static_cast<double>(s.size()) <
                    sched.c * std::pow(box.side, static_cast<double>(s.dim()));
  return w;
}

/// Cell index along one axis; the closed upper face folds into the last cell.
inline std::size_t cell_index(double v, double lo, double width, std::size_t cells) {
  const double f = std::floor((v - lo) / width);
  if (!(f > 0.0)) return 0;
  if (f >= static_cast<double>(cells - 1)) return cells - 1;
  return static_cast<std::size_t>(f);
}

}  // namespace apxpat::detail
