#include "apxpat/collinear.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "apxpat/error.hpp"

namespace apxpat {
namespace {

constexpr double kFrameAngle = 0.6180339887498949;  // 1/phi radians
constexpr std::size_t kMaxDegenerateFrames = 8;

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1U; }
void set(Bits& b, std::size_t i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
void reset(Bits& b, std::size_t i) { b[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (std::uint64_t w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> members(const Bits& b) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < b.size(); ++w) {
    std::uint64_t word = b[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

enum class CliqueResult { Found, Absent, Budget };

// Branch and bound for a clique of size k with a greedy-colouring bound.
class CliqueFinder {
 public:
  CliqueFinder(const std::vector<Bits>& adj, std::size_t k, std::uint64_t budget)
      : adj_(adj), k_(k), budget_(budget) {}

  CliqueResult run(const Bits& candidates) {
    current_.clear();
    const bool hit = expand(candidates);
    if (hit) return CliqueResult::Found;
    return exhausted_ ? CliqueResult::Budget : CliqueResult::Absent;
  }

  const std::vector<std::size_t>& clique() const { return current_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool expand(Bits p) {
    if (current_.size() >= k_) return true;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    std::vector<std::size_t> order;
    std::vector<std::size_t> colour;
    colour_sort(p, order, colour);
    for (std::size_t n = order.size(); n-- > 0;) {
      if (current_.size() + colour[n] < k_) return false;
      const std::size_t v = order[n];
      current_.push_back(v);
      Bits next = p;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] &= adj_[v][w];
      if (expand(std::move(next))) return true;
      if (exhausted_) return false;
      current_.pop_back();
      reset(p, v);
    }
    return false;
  }

  // Greedy sequential colouring; order[] sorted by non-decreasing colour.
  void colour_sort(const Bits& p, std::vector<std::size_t>& order,
                   std::vector<std::size_t>& colour) const {
    Bits uncoloured = p;
    std::size_t c = 0;
    while (popcount(uncoloured) > 0) {
      ++c;
      Bits q = uncoloured;
      for (std::size_t v : members(q)) {
        if (!test(q, v)) continue;
        reset(uncoloured, v);
        order.push_back(v);
        colour.push_back(c);
        for (std::size_t w = 0; w < q.size(); ++w) q[w] &= ~adj_[v][w];
        reset(q, v);
      }
    }
  }

  const std::vector<Bits>& adj_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::vector<std::size_t> current_;
};

std::vector<std::size_t> greedy_clique(const std::vector<Bits>& adj, const Bits& alive,
                                       std::size_t k) {
  std::vector<std::size_t> verts = members(alive);
  std::vector<std::size_t> degree(adj.size(), 0);
  for (std::size_t v : verts) {
    Bits nb = adj[v];
    for (std::size_t w = 0; w < nb.size(); ++w) nb[w] &= alive[w];
    degree[v] = popcount(nb);
  }
  std::stable_sort(verts.begin(), verts.end(),
                   [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  for (std::size_t start : verts) {
    std::vector<std::size_t> clique{start};
    Bits cand = adj[start];
    for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= alive[w];
    while (clique.size() < k) {
      std::size_t pick = adj.size();
      for (std::size_t v : members(cand)) {
        if (pick == adj.size() || degree[v] > degree[pick]) pick = v;
      }
      if (pick == adj.size()) break;
      clique.push_back(pick);
      for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= adj[pick][w];
    }
    if (clique.size() >= k) return clique;
  }
  return {};
}

std::vector<Point> rotated(const PointSet& s, std::size_t turns) {
  const double a = kFrameAngle * static_cast<double>(turns);
  const double cs = std::cos(a);
  const double sn = std::sin(a);
  std::vector<Point> out;
  out.reserve(s.size());
  for (const Point& p : s) out.push_back(Point{p[0] * cs - p[1] * sn, p[0] * sn + p[1] * cs});
  return out;
}

bool has_vertical_pair(const std::vector<Point>& pts) {
  std::vector<double> xs;
  xs.reserve(pts.size());
  for (const Point& p : pts) xs.push_back(p[0]);
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i] - xs[i - 1] <= 1e-12 * std::max(1.0, std::abs(xs[i]))) return true;
  }
  return false;
}

}  // namespace

std::size_t bucket_count(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::Domain, "eps must be positive");
  return static_cast<std::size_t>(std::ceil(std::numbers::pi / eps)) + 1;
}

std::size_t angle_bucket(const Point& p, const Point& q, std::size_t r) {
  if (p.dim() != 2 || q.dim() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "angle buckets are defined for planar points");
  }
  if (r == 0) throw Error(ErrorKind::Domain, "bucket count must be positive");
  if (p == q) throw Error(ErrorKind::InvalidArgument, "coincident points have no direction");
  const Point& left = p[0] <= q[0] ? p : q;
  const Point& right = p[0] <= q[0] ? q : p;
  const double dx = right[0] - left[0];
  if (!(dx > 0.0)) {
    throw Error(ErrorKind::DegenerateFrame, "segment is vertical in the current frame");
  }
  const double angle = std::atan2(right[1] - left[1], dx);
  const double v = (angle + std::numbers::pi / 2.0) / (std::numbers::pi / static_cast<double>(r));
  auto i = static_cast<std::size_t>(std::max(0.0, std::floor(v)));
  // Values a rounding error below a boundary belong to the upper, half-closed cell.
  if (static_cast<double>(i + 1) - v <= 1e-12 * static_cast<double>(r)) ++i;
  return std::min(i, r - 1);
}

AngleColoring::AngleColoring(const PointSet& s, double eps)
    : n_(s.size()), r_(bucket_count(eps)) {
  if (s.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "angle colouring needs planar points");
  colors_.resize(n_ * (n_ - 1) / 2);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      colors_[pair_slot(i, j)] = static_cast<std::uint32_t>(angle_bucket(s[i], s[j], r_));
    }
  }
}

std::size_t AngleColoring::pair_slot(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n_) throw Error(ErrorKind::InvalidArgument, "invalid point pair");
  return j * (j - 1) / 2 + i;
}

std::size_t AngleColoring::bucket(std::size_t i, std::size_t j) const {
  return colors_[pair_slot(i, j)];
}

double AngleColoring::width() const noexcept {
  return std::numbers::pi / static_cast<double>(r_);
}

CollinearSearch find_collinear(const PointSet& s, std::size_t k, double eps,
                               const CollinearOptions& options) {
  if (s.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "find_collinear supports d = 2 only");
  if (k < 3) throw Error(ErrorKind::Domain, "k must be at least 3");
  if (!(eps > 0.0) || !(eps < 1.0)) throw Error(ErrorKind::Domain, "eps must lie in (0, 1)");
  if (s.size() < k) throw Error(ErrorKind::InvalidArgument, "fewer than k points");
  if (!(min_pairwise_distance(s) > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "points must be pairwise distinct");
  }

  CollinearSearch out;
  const std::size_t n = s.size();
  const std::size_t words = (n + 63) / 64;
  const std::size_t needed_edges = k * (k - 1) / 2;
  bool budget_hit = false;
  std::size_t frames = 0;
  std::size_t degenerate_run = 0;

  for (std::size_t turns = 0; frames < std::max<std::size_t>(options.max_frames, 1); ++turns) {
    const std::vector<Point> pts = rotated(s, turns);
    if (has_vertical_pair(pts)) {
      if (++degenerate_run > kMaxDegenerateFrames) {
        if (frames == 0) {
          throw Error(ErrorKind::DegenerateFrame, "no rotation separates all x-coordinates");
        }
        break;
      }
      continue;
    }
    degenerate_run = 0;
    ++frames;
    const AngleColoring colouring(PointSet(pts), eps);
    const std::size_t r = colouring.buckets();

    std::vector<std::size_t> edge_count(r, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) ++edge_count[colouring.bucket(i, j)];
    }
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return edge_count[a] > edge_count[b]; });

    for (std::size_t b : order) {
      if (edge_count[b] < needed_edges) break;
      std::vector<Bits> adj(n, Bits(words, 0));
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (colouring.bucket(i, j) == b) {
            set(adj[i], j);
            set(adj[j], i);
          }
        }
      }
      // Peel to the (k-1)-core: lower-degree vertices cannot be in a k-clique.
      Bits alive(words, 0);
      for (std::size_t i = 0; i < n; ++i) set(alive, i);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t v : members(alive)) {
          Bits nb = adj[v];
          for (std::size_t w = 0; w < words; ++w) nb[w] &= alive[w];
          if (popcount(nb) + 1 < k) {
            reset(alive, v);
            changed = true;
          }
        }
      }
      if (popcount(alive) < k) continue;

      CliqueFinder finder(adj, k, options.node_budget);
      const CliqueResult result = finder.run(alive);
      out.nodes += finder.nodes();
      std::vector<std::size_t> clique;
      if (result == CliqueResult::Found) {
        clique = finder.clique();
      } else if (result == CliqueResult::Budget) {
        clique = greedy_clique(adj, alive, k);
        if (clique.empty()) budget_hit = true;
        out.from_greedy = !clique.empty();
      }
      if (clique.empty()) continue;

      clique.resize(k);
      std::sort(clique.begin(), clique.end());
      out.status = CollinearStatus::Found;
      out.subset = std::move(clique);
      out.bucket = b;
      out.rotations = turns;
      out.certificate = verify_collinear(s.subset(out.subset), eps);
      if (!out.certificate.accepted) {
        throw Error(ErrorKind::Internal, "monochromatic subset failed its collinearity certificate");
      }
      return out;
    }
  }
  out.status = budget_hit ? CollinearStatus::BudgetExceeded : CollinearStatus::Exhausted;
  return out;
}

}  // namespace apxpat
