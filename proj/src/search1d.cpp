#include <algorithm>
#include <limits>
#include <numeric>

#include "apxpat/search.hpp"
#include "search_common.hpp"

namespace apxpat {

std::optional<std::size_t> scan_systems_1d(std::span<const std::size_t> counts, std::size_t k,
                                           std::size_t s) {
  if (k == 0 || s == 0 || counts.size() != k * s) {
    throw Error(ErrorKind::InvalidArgument, "counts must have exactly k*s entries");
  }
  for (std::size_t t = 0; t < s; ++t) {
    bool full = true;
    for (std::size_t p = 0; p < k && full; ++p) full = counts[t + p * s] > 0;
    if (full) return t;
  }
  return std::nullopt;
}

SearchOutcome search_ap(const PointSet& s, std::size_t k, double eps, double delta, double c,
                        const SearchOptions& options) {
  if (s.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "search_ap expects a 1-D point set");
  if (k < 3) throw Error(ErrorKind::Domain, "search_ap needs k >= 3");
  detail::check_search_params(eps, delta);

  SearchOutcome out;
  out.schedule = schedule_1d(k, c, delta, eps);
  out.grid_k = k;
  out.grid_eps = eps;
  detail::check_separation(s, delta);
  out.domain = detail::initial_box(s, options);
  out.warnings = detail::warnings_for(s, out.domain, out.schedule);

  const std::size_t stride = out.schedule.stride;
  const std::size_t cells = k * stride;
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  std::vector<std::size_t> members(s.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  double lo = out.domain.low[0];
  double side = out.domain.side;

  std::vector<std::size_t> counts(cells);
  std::vector<std::size_t> first(cells);
  std::vector<std::size_t> cell_of(s.size());

  for (std::size_t step = 0; step < out.schedule.depth; ++step) {
    // Too few points left for a full system; deeper boxes hold no more.
    if (step > 0 && members.size() < k) break;
    const double width = side / static_cast<double>(cells);
    std::fill(counts.begin(), counts.end(), 0);
    std::fill(first.begin(), first.end(), none);
    // members stay in ascending index order, so the first hit per cell is the
    // lowest index.
    for (std::size_t m : members) {
      const std::size_t cell = detail::cell_index(s[m][0], lo, width, cells);
      cell_of[m] = cell;
      if (counts[cell]++ == 0) first[cell] = m;
    }

    SearchStep rec;
    rec.box = AxisBox{Point{lo}, side};
    rec.count = members.size();
    rec.cell_count_sum = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    rec.occupied_cells = static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](std::size_t n) { return n > 0; }));

    if (const auto t = scan_systems_1d(counts, k, stride)) {
      rec.action = StepAction::Success;
      rec.offset = {*t};
      std::vector<double> coords;
      for (std::size_t p = 0; p < k; ++p) {
        const std::size_t cell = *t + p * stride;
        rec.chosen.push_back(first[cell]);
        rec.anchors.push_back(Point{lo + static_cast<double>(cell) * width});
        coords.push_back(s[first[cell]][0]);
      }
      out.found = true;
      out.subset = rec.chosen;
      out.anchors = rec.anchors;
      out.homothety = Homothety(rec.anchors.front(), static_cast<double>(stride) * width);
      out.verify = verify_ap(coords, eps);
      out.trace.steps.push_back(std::move(rec));
      if (!out.verify->accepted) {
        throw Error(ErrorKind::Internal, "subdivision result failed its certificate");
      }
      return out;
    }

    // At most (k-1)s cells are occupied, so the fullest one satisfies the
    // pigeonhole bound.
    std::size_t best = 0;
    for (std::size_t cell = 1; cell < cells; ++cell) {
      if (counts[cell] > counts[best]) best = cell;
    }
    rec.action = StepAction::Descend;
    rec.cell = {best};
    out.trace.steps.push_back(std::move(rec));

    std::vector<std::size_t> next;
    next.reserve(counts[best]);
    for (std::size_t m : members) {
      if (cell_of[m] == best) next.push_back(m);
    }
    members = std::move(next);
    lo += static_cast<double>(best) * width;
    side = width;
  }
  return out;
}

}  // namespace apxpat
