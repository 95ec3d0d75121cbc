#include <algorithm>
#include <cmath>
#include <iterator>
#include <list>

#include "apxpat/error.hpp"
#include "apxpat/verifier.hpp"

namespace apxpat {

bool Ball::contains(const Point& p, double tol) const {
  return distance(center, p) <= radius * (1.0 + tol) + tol;
}

namespace {

constexpr double kInsideRelTol = 1e-12;
constexpr int kMaxPivotRounds = 64;

// Move-to-front miniball: recursion depth is bounded by the support size
// (at most d + 1), so the input size only affects the outer loop.
class MebSolver {
 public:
  explicit MebSolver(std::span<const Point> pts) : pts_(pts), dim_(pts.front().dim()) {
    for (std::size_t i = 0; i < pts.size(); ++i) order_.push_back(i);
  }

  Ball solve() {
    for (int round = 0; round < kMaxPivotRounds; ++round) {
      support_.clear();
      move_to_front(order_.end());
      // Float rounding can leave a point marginally outside; pivot it to the
      // front and rerun.
      auto worst = order_.end();
      double worst_excess = 0.0;
      for (auto it = order_.begin(); it != order_.end(); ++it) {
        const double excess = distance(center_, pts_[*it]) - radius_;
        if (excess > worst_excess) {
          worst_excess = excess;
          worst = it;
        }
      }
      if (worst == order_.end() || worst_excess <= 1e-12 * std::max(1.0, radius_)) break;
      order_.splice(order_.begin(), order_, worst);
    }
    return Ball{center_, std::max(radius_, 0.0)};
  }

 private:
  bool inside(std::size_t i) const {
    if (radius_ < 0.0) return false;
    const double d2 = squared_distance(center_, pts_[i]);
    return d2 <= radius_ * radius_ * (1.0 + kInsideRelTol) + 1e-300;
  }

  void move_to_front(std::list<std::size_t>::iterator end) {
    support_ball();
    if (support_.size() == dim_ + 1) return;
    for (auto it = order_.begin(); it != end;) {
      auto next = std::next(it);
      if (!inside(*it)) {
        support_.push_back(*it);
        move_to_front(it);
        support_.pop_back();
        order_.splice(order_.begin(), order_, it);
      }
      it = next;
    }
  }

  // Circumscribed ball of the support set within its affine hull.
  void support_ball() {
    if (support_.empty()) {
      center_ = Point::zero(dim_);
      radius_ = -1.0;
      return;
    }
    const Point& origin = pts_[support_.front()];
    const std::size_t m = support_.size() - 1;
    if (m == 0) {
      center_ = origin;
      radius_ = 0.0;
      return;
    }
    std::vector<Point> v;
    v.reserve(m);
    for (std::size_t j = 1; j <= m; ++j) v.push_back(pts_[support_[j]] - origin);

    // Solve sum_i 2 (v_j . v_i) x_i = |v_j|^2 by Gaussian elimination.
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
    double scale = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        a[r][c] = 2.0 * dot(v[r], v[c]);
        scale = std::max(scale, std::abs(a[r][c]));
      }
      a[r][m] = dot(v[r], v[r]);
    }
    bool singular = false;
    for (std::size_t col = 0; col < m && !singular; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r) {
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      }
      if (std::abs(a[piv][col]) <= 1e-14 * scale) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[col]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
      }
    }
    if (singular) {
      // Newest support point lies in the affine hull of the others: grow the
      // current ball just enough to cover it.
      const Point& p = pts_[support_.back()];
      if (radius_ < 0.0) {
        center_ = p;
        radius_ = 0.0;
      } else {
        radius_ = std::max(radius_, distance(center_, p));
      }
      return;
    }
    std::vector<double> c(origin.begin(), origin.end());
    for (std::size_t j = 0; j < m; ++j) {
      const double x = a[j][m] / a[j][j];
      for (std::size_t ax = 0; ax < dim_; ++ax) c[ax] += x * v[j][ax];
    }
    center_ = Point(std::move(c));
    radius_ = 0.0;
    for (std::size_t s : support_) radius_ = std::max(radius_, distance(center_, pts_[s]));
  }

  std::span<const Point> pts_;
  std::size_t dim_;
  std::list<std::size_t> order_;
  std::vector<std::size_t> support_;
  Point center_;
  double radius_ = -1.0;
};

}  // namespace

Ball min_enclosing_ball(std::span<const Point> pts) {
  if (pts.empty()) {
    throw Error(ErrorKind::InvalidArgument, "minimum enclosing ball of an empty set");
  }
  for (const Point& p : pts) {
    if (p.dim() != pts.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "mixed dimensions in enclosing-ball input");
    }
  }
  return MebSolver(pts).solve();
}

}  // namespace apxpat
