#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <vector>

namespace apxpat {

/// A point of R^d with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zero(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t axis) const { return coords_[axis]; }
  std::span<const double> coords() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double s, const Point& p);

double dot(const Point& a, const Point& b);
double norm(const Point& p);
double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Immutable, dimension-uniform, nonempty collection of points. The
/// axis-aligned bounding box is computed at construction.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points);
  /// Convenience for 1-D inputs.
  static PointSet line(std::span<const double> values);
  static PointSet line(std::initializer_list<double> values);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }

  PointSet subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
  Point lower_;
  Point upper_;
};

/// Target configuration: k >= 2 pairwise distinct points with cached
/// minimum pairwise distance and diameter.
class Pattern {
 public:
  explicit Pattern(std::vector<Point> points);
  explicit Pattern(const PointSet& points);

  /// {0,...,k-1}^d, enumerated lexicographically (last axis fastest).
  static Pattern grid(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return points_.front().dim(); }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  double min_pairwise() const noexcept { return min_pairwise_; }
  double diameter() const noexcept { return diameter_; }

 private:
  std::vector<Point> points_;
  double min_pairwise_ = 0.0;
  double diameter_ = 0.0;
};

/// x -> anchor + scale * x, scale > 0.
class Homothety {
 public:
  Homothety(Point anchor, double scale);

  const Point& anchor() const noexcept { return anchor_; }
  double scale() const noexcept { return scale_; }

  Point apply(const Point& p) const;

 private:
  Point anchor_;
  double scale_;
};

/// The closed cube [low, low + side]^d.
struct AxisBox {
  Point low;
  double side = 0.0;
};

// Naive O(k^2) scans; intended for patterns and found subsets.
double min_pairwise_distance(std::span<const Point> pts);
double min_pairwise_distance(const PointSet& s);
double diameter(std::span<const Point> pts);
double diameter(const PointSet& s);

PointSet apply_homothety(const Homothety& h, const Pattern& p);

/// Uniform grid hash with a fixed cell side, answering "is any stored
/// point closer than r" for r no larger than the cell side.
class SpatialHash {
 public:
  SpatialHash(std::size_t dim, double cell);

  void insert(const Point& p);
  bool any_closer_than(const Point& p, double radius) const;
  std::size_t size() const noexcept { return count_; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const noexcept;
  };

  std::vector<std::int64_t> key_of(const Point& p) const;

  std::size_t dim_;
  double cell_;
  std::size_t count_ = 0;
  std::unordered_map<std::vector<std::int64_t>, std::vector<Point>, KeyHash> cells_;
};

/// True when no two points of s are closer than delta (linear expected time).
bool is_separated(const PointSet& s, double delta);

}  // namespace apxpat
