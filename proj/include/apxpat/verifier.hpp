#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "apxpat/geometry.hpp"

namespace apxpat {

/// Constraints satisfied up to this relative slack count as satisfied.
inline constexpr double kFeasibilityTol = 1e-9;

struct Ball {
  Point center;
  double radius = 0.0;

  bool contains(const Point& p, double tol = 0.0) const;
};

/// Certificate for an approximate-copy check. `max_relative_deviation` is
/// the optimal max_i |q_i - q'_i| / (scale * m_P) over all admissible
/// homotheties; the witness realises it.
struct VerifyResult {
  bool accepted = false;
  Point witness_anchor;
  double witness_scale = 0.0;
  double max_relative_deviation = 0.0;
};

/// Smallest closed ball containing `pts` (move-to-front with pivoting).
Ball min_enclosing_ball(std::span<const Point> pts);

/// q must be strictly increasing with at least 3 entries; eps in [0, 1/3].
/// Solved exactly: the deviation is a convex piecewise-linear function of
/// 1/r whose minimum sits on one of the O(k^2) pairwise breakpoints.
VerifyResult verify_ap(std::span<const double> q, double eps);

/// `assignment[i]` is the pattern index matched with q[i].
VerifyResult verify_homothetic(const PointSet& q, const Pattern& p,
                               std::span<const std::size_t> assignment, double eps);

struct CollinearCheck {
  bool accepted = false;
  std::array<std::size_t, 3> worst_triangle{};
  /// Interior angles (radians) at worst_triangle[0], [1], [2].
  std::array<double, 3> worst_angles{};
  /// Second-smallest angle of the worst triangle.
  double worst_angle = 0.0;
};

CollinearCheck verify_collinear(const PointSet& q, double eps);

/// Maximum distance from a point of q to the line through q's diameter pair.
double cylinder_radius(const PointSet& q);

}  // namespace apxpat
