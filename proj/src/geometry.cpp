#include "apxpat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "apxpat/error.hpp"

namespace apxpat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::FewerThanTwoPoints: return "FewerThanTwoPoints";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::InsufficientSeparation: return "InsufficientSeparation";
    case ErrorKind::DegeneratePattern: return "DegeneratePattern";
    case ErrorKind::DegenerateFrame: return "DegenerateFrame";
    case ErrorKind::ResolutionOverflow: return "ResolutionOverflow";
    case ErrorKind::InfeasibleGeneration: return "InfeasibleGeneration";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "point must have at least one coordinate");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::InvalidArgument, "point coordinate is not finite");
    }
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "point dimensions differ: " + std::to_string(a.dim()) + " vs " +
                    std::to_string(b.dim()));
  }
}

}  // namespace

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Point(std::move(out));
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Point(std::move(out));
}

Point operator*(double s, const Point& p) {
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * p[i];
  return Point(std::move(out));
}

double dot(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm(const Point& p) { return std::sqrt(dot(p, p)); }

double squared_distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "point set is empty");
  }
  dim_ = points_.front().dim();
  std::vector<double> lo(points_.front().begin(), points_.front().end());
  std::vector<double> hi = lo;
  for (const Point& p : points_) {
    if (p.dim() != dim_) {
      throw Error(ErrorKind::DimensionMismatch, "point set has mixed dimensions");
    }
    for (std::size_t a = 0; a < dim_; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  lower_ = Point(std::move(lo));
  upper_ = Point(std::move(hi));
}

PointSet PointSet::line(std::span<const double> values) {
  std::vector<Point> pts;
  pts.reserve(values.size());
  for (double v : values) pts.emplace_back(std::vector<double>{v});
  return PointSet(std::move(pts));
}

PointSet PointSet::line(std::initializer_list<double> values) {
  return line(std::span<const double>(values.begin(), values.size()));
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= points_.size()) {
      throw Error(ErrorKind::InvalidArgument, "subset index out of range");
    }
    pts.push_back(points_[i]);
  }
  return PointSet(std::move(pts));
}

double min_pairwise_distance(std::span<const Point> pts) {
  if (pts.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoPoints, "minimum pairwise distance needs two points");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, squared_distance(pts[i], pts[j]));
    }
  }
  return std::sqrt(best);
}

double min_pairwise_distance(const PointSet& s) { return min_pairwise_distance(s.points()); }

double diameter(std::span<const Point> pts) {
  if (pts.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoPoints, "diameter needs two points");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, squared_distance(pts[i], pts[j]));
    }
  }
  return std::sqrt(best);
}

double diameter(const PointSet& s) { return diameter(s.points()); }

Pattern::Pattern(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorKind::DegeneratePattern, "pattern needs at least two points");
  }
  for (const Point& p : points_) {
    if (p.dim() != points_.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "pattern has mixed dimensions");
    }
  }
  min_pairwise_ = min_pairwise_distance(points_);
  if (!(min_pairwise_ > 0.0)) {
    throw Error(ErrorKind::DegeneratePattern, "pattern points are not pairwise distinct");
  }
  diameter_ = apxpat::diameter(points_);
}

Pattern::Pattern(const PointSet& points)
    : Pattern(std::vector<Point>(points.begin(), points.end())) {}

Pattern Pattern::grid(std::size_t dim, std::size_t k) {
  if (dim == 0 || k < 2) {
    throw Error(ErrorKind::Domain, "grid pattern needs dim >= 1 and k >= 2");
  }
  std::size_t total = 1;
  for (std::size_t a = 0; a < dim; ++a) total *= k;
  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<double> c(dim, 0.0);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rem = n;
    for (std::size_t a = dim; a-- > 0;) {
      c[a] = static_cast<double>(rem % k);
      rem /= k;
    }
    pts.emplace_back(c);
  }
  return Pattern(std::move(pts));
}

Homothety::Homothety(Point anchor, double scale) : anchor_(std::move(anchor)), scale_(scale) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    throw Error(ErrorKind::Domain, "homothety scale must be positive and finite");
  }
}

Point Homothety::apply(const Point& p) const { return anchor_ + scale_ * p; }

PointSet apply_homothety(const Homothety& h, const Pattern& p) {
  if (h.anchor().dim() != p.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "homothety and pattern dimensions differ");
  }
  std::vector<Point> out;
  out.reserve(p.size());
  for (const Point& q : p.points()) out.push_back(h.apply(q));
  return PointSet(std::move(out));
}

SpatialHash::SpatialHash(std::size_t dim, double cell) : dim_(dim), cell_(cell) {
  if (dim_ == 0 || !(cell_ > 0.0)) {
    throw Error(ErrorKind::Domain, "spatial hash needs dim >= 1 and a positive cell side");
  }
}

std::size_t SpatialHash::KeyHash::operator()(const std::vector<std::int64_t>& key) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t v : key) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::int64_t> SpatialHash::key_of(const Point& p) const {
  std::vector<std::int64_t> key(dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    key[a] = static_cast<std::int64_t>(std::floor(p[a] / cell_));
  }
  return key;
}

void SpatialHash::insert(const Point& p) {
  cells_[key_of(p)].push_back(p);
  ++count_;
}

bool SpatialHash::any_closer_than(const Point& p, double radius) const {
  const std::vector<std::int64_t> base = key_of(p);
  const double r2 = radius * radius;
  std::vector<std::int64_t> key(dim_);
  std::size_t neighbours = 1;
  for (std::size_t a = 0; a < dim_; ++a) neighbours *= 3;
  for (std::size_t n = 0; n < neighbours; ++n) {
    std::size_t rem = n;
    for (std::size_t a = 0; a < dim_; ++a) {
      key[a] = base[a] + static_cast<std::int64_t>(rem % 3) - 1;
      rem /= 3;
    }
    auto it = cells_.find(key);
    if (it == cells_.end()) continue;
    for (const Point& q : it->second) {
      if (squared_distance(p, q) < r2) return true;
    }
  }
  return false;
}

bool is_separated(const PointSet& s, double delta) {
  if (!(delta > 0.0)) return true;
  SpatialHash hash(s.dim(), delta);
  for (const Point& p : s) {
    if (hash.any_closer_than(p, delta)) return false;
    hash.insert(p);
  }
  return true;
}

}  // namespace apxpat
