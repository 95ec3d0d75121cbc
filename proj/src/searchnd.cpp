#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "apxpat/search.hpp"
#include "search_common.hpp"

namespace apxpat {
namespace {

using MultiIndex = std::vector<std::size_t>;

struct CellInfo {
  std::size_t count = 0;
  std::size_t first = 0;
};

// Enumerates {0,...,k-1}^d lexicographically (last axis fastest).
bool next_index(MultiIndex& i, std::size_t k) {
  for (std::size_t a = i.size(); a-- > 0;) {
    if (++i[a] < k) return true;
    i[a] = 0;
  }
  return false;
}

double robust_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return r;
  return std::ceil(x);
}

}  // namespace

SearchOutcome search_grid(const PointSet& s, std::size_t k, double eps, double delta, double c,
                          const SearchOptions& options) {
  if (k < 2) throw Error(ErrorKind::Domain, "search_grid needs k >= 2");
  detail::check_search_params(eps, delta);
  const std::size_t d = s.dim();

  SearchOutcome out;
  out.schedule = schedule_nd(d, k, c, delta, eps);
  out.grid_k = k;
  out.grid_eps = eps;
  detail::check_separation(s, delta);
  out.domain = detail::initial_box(s, options);
  out.warnings = detail::warnings_for(s, out.domain, out.schedule);

  const std::size_t stride = out.schedule.stride;
  const std::size_t cells = k * stride;

  std::vector<std::size_t> members(s.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  Point low = out.domain.low;
  double side = out.domain.side;

  // Points needed for one full system, saturating well above any input size.
  std::size_t system_size = 1;
  for (std::size_t a = 0; a < d && system_size <= s.size(); ++a) system_size *= k;

  for (std::size_t step = 0; step < out.schedule.depth; ++step) {
    if (step > 0 && members.size() < system_size) break;
    const double width = side / static_cast<double>(cells);
    std::map<MultiIndex, CellInfo> occupied;
    std::vector<MultiIndex> cell_of(members.size());
    for (std::size_t n = 0; n < members.size(); ++n) {
      MultiIndex idx(d);
      for (std::size_t a = 0; a < d; ++a) {
        idx[a] = detail::cell_index(s[members[n]][a], low[a], width, cells);
      }
      auto [it, inserted] = occupied.try_emplace(idx, CellInfo{0, members[n]});
      ++it->second.count;
      cell_of[n] = std::move(idx);
    }

    SearchStep rec;
    rec.box = AxisBox{low, side};
    rec.count = members.size();
    rec.occupied_cells = occupied.size();
    for (const auto& [idx, info] : occupied) rec.cell_count_sum += info.count;

    auto corner = [&](const MultiIndex& cell) {
      std::vector<double> v(d);
      for (std::size_t a = 0; a < d; ++a) v[a] = low[a] + static_cast<double>(cell[a]) * width;
      return Point(std::move(v));
    };

    // A system is named by its i = 0 cell, so only occupied cells with every
    // coordinate below the stride can start a full system; the map iterates
    // them in lexicographic order of t.
    for (const auto& [t, info] : occupied) {
      if (!std::all_of(t.begin(), t.end(), [&](std::size_t v) { return v < stride; })) continue;
      std::vector<std::size_t> chosen;
      std::vector<Point> anchors;
      MultiIndex i(d, 0);
      MultiIndex cell(d);
      bool full = true;
      do {
        for (std::size_t a = 0; a < d; ++a) cell[a] = t[a] + i[a] * stride;
        auto hit = occupied.find(cell);
        if (hit == occupied.end()) {
          full = false;
          break;
        }
        chosen.push_back(hit->second.first);
        anchors.push_back(corner(cell));
      } while (next_index(i, k));
      if (!full) continue;

      rec.action = StepAction::Success;
      rec.offset = t;
      rec.chosen = chosen;
      rec.anchors = anchors;
      out.found = true;
      out.subset = std::move(chosen);
      out.anchors = std::move(anchors);
      out.homothety = Homothety(out.anchors.front(), static_cast<double>(stride) * width);
      std::vector<std::size_t> identity(out.subset.size());
      std::iota(identity.begin(), identity.end(), std::size_t{0});
      out.verify = verify_homothetic(s.subset(out.subset), Pattern::grid(d, k), identity, eps);
      out.trace.steps.push_back(std::move(rec));
      if (!out.verify->accepted) {
        throw Error(ErrorKind::Internal, "subdivision result failed its certificate");
      }
      return out;
    }

    auto best = occupied.begin();
    for (auto it = occupied.begin(); it != occupied.end(); ++it) {
      if (it->second.count > best->second.count) best = it;
    }
    if (best == occupied.end()) break;
    const MultiIndex target = best->first;
    rec.action = StepAction::Descend;
    rec.cell = target;
    out.trace.steps.push_back(std::move(rec));

    std::vector<std::size_t> next;
    next.reserve(best->second.count);
    for (std::size_t n = 0; n < members.size(); ++n) {
      if (cell_of[n] == target) next.push_back(members[n]);
    }
    members = std::move(next);
    low = corner(target);
    side = width;
  }
  return out;
}

namespace {

// Side k when p is exactly the node set of a k-grid with spacing m_P, else 0.
std::size_t grid_side(const Pattern& p) {
  double extent = 0.0;
  for (std::size_t a = 0; a < p.dim(); ++a) {
    double lo = p[0][a];
    double hi = lo;
    for (const Point& q : p.points()) {
      lo = std::min(lo, q[a]);
      hi = std::max(hi, q[a]);
    }
    extent = std::max(extent, hi - lo);
  }
  const double m = p.min_pairwise();
  const double steps = extent / m;
  const double k_real = std::round(steps) + 1.0;
  if (std::abs(steps + 1.0 - k_real) > 1e-9 * k_real) return 0;
  const auto k = static_cast<std::size_t>(k_real);
  const std::size_t d = p.dim();
  if (std::pow(k_real, static_cast<double>(d)) != static_cast<double>(p.size())) return 0;
  std::vector<double> low(d, std::numeric_limits<double>::infinity());
  for (const Point& q : p.points()) {
    for (std::size_t a = 0; a < d; ++a) low[a] = std::min(low[a], q[a]);
  }
  std::set<std::vector<std::size_t>> seen;
  for (const Point& q : p.points()) {
    std::vector<std::size_t> node(d);
    for (std::size_t a = 0; a < d; ++a) {
      const double u = (q[a] - low[a]) / m;
      const double r = std::round(u);
      if (std::abs(u - r) > 1e-9 * k_real || r < 0.0 || r > k_real - 1.0) return 0;
      node[a] = static_cast<std::size_t>(r);
    }
    seen.insert(std::move(node));
  }
  return seen.size() == p.size() ? k : 0;
}

}  // namespace

GridResolution pattern_grid_resolution(const Pattern& p, double eps, std::size_t d) {
  if (p.dim() != d) throw Error(ErrorKind::DimensionMismatch, "pattern dimension differs from d");
  if (!(eps > 0.0) || eps > 1.0 / 3.0) throw Error(ErrorKind::Domain, "eps must lie in (0, 1/3]");
  const double m_p = p.min_pairwise();
  if (!(m_p > 0.0)) throw Error(ErrorKind::DegeneratePattern, "pattern has coincident points");
  double extent = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    double lo = p[0][a];
    double hi = lo;
    for (const Point& q : p.points()) {
      lo = std::min(lo, q[a]);
      hi = std::max(hi, q[a]);
    }
    extent = std::max(extent, hi - lo);
  }
  GridResolution res;
  res.eps = std::min(eps / 2.0, 1.0 / 3.0);
  // Rounding to the nearest node costs at most sqrt(d)/2 grid spacings and
  // the grid search eps_g spacings; K is the smallest resolution whose
  // per-spacing budget eps*(K-1)*m_P/extent covers both.
  const double need =
      (res.eps + std::sqrt(static_cast<double>(d)) / 2.0) * extent / (res.eps * m_p);
  res.k = 1 + static_cast<std::size_t>(robust_ceil(need));
  return res;
}

SearchOutcome search_pattern(const PointSet& s, const Pattern& p, double eps, double delta,
                             double c, const SearchOptions& options) {
  if (p.dim() != s.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "pattern and input dimensions differ");
  }
  detail::check_search_params(eps, delta);
  const std::size_t d = s.dim();
  // A pattern that is already a k-grid needs no refinement.
  GridResolution res;
  if (const std::size_t k = grid_side(p); k >= 2) {
    res.k = k;
    res.eps = eps;
  } else {
    res = pattern_grid_resolution(p, eps, d);
  }
  if (res.k > options.resolution_cap) {
    throw Error(ErrorKind::ResolutionOverflow,
                "pattern needs grid resolution " + std::to_string(res.k) + " > cap " +
                    std::to_string(options.resolution_cap));
  }

  SearchOutcome out = search_grid(s, res.k, res.eps, delta, c, options);
  if (!out.found) return out;

  // Normalise the pattern into [0, K-1]^d and snap each point to a node.
  std::vector<double> p_low(d);
  double extent = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    double lo = p[0][a];
    double hi = lo;
    for (const Point& q : p.points()) {
      lo = std::min(lo, q[a]);
      hi = std::max(hi, q[a]);
    }
    p_low[a] = lo;
    extent = std::max(extent, hi - lo);
  }
  const double to_grid = static_cast<double>(res.k - 1) / extent;
  const double spacing = out.homothety->scale();
  const double lambda = spacing * to_grid;
  std::vector<double> a0(d);
  for (std::size_t a = 0; a < d; ++a) a0[a] = out.anchors.front()[a] - lambda * p_low[a];
  const Homothety copy(Point(std::move(a0)), lambda);

  std::vector<std::size_t> subset;
  std::vector<Point> anchors;
  for (const Point& q : p.points()) {
    std::size_t linear = 0;
    for (std::size_t a = 0; a < d; ++a) {
      const auto node = static_cast<std::size_t>(std::llround((q[a] - p_low[a]) * to_grid));
      linear = linear * res.k + std::min(node, res.k - 1);
    }
    subset.push_back(out.subset[linear]);
    anchors.push_back(copy.apply(q));
  }
  std::vector<std::size_t> identity(subset.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  out.verify = verify_homothetic(s.subset(subset), p, identity, eps);
  out.found = out.verify->accepted;
  out.subset = std::move(subset);
  out.anchors = std::move(anchors);
  out.homothety = copy;
  return out;
}

}  // namespace apxpat
