#include "apxpat/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "apxpat/error.hpp"

namespace apxpat {
namespace {

// Midrange spread of y_i = w*q_i - i: returns (half-width, midpoint).
std::pair<double, double> ap_spread(std::span<const double> q, double w) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double y = w * q[i] - static_cast<double>(i);
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  return {(hi - lo) / 2.0, (hi + lo) / 2.0};
}

void check_assignment(std::span<const std::size_t> assignment, std::size_t k) {
  if (assignment.size() != k) {
    throw Error(ErrorKind::InvalidArgument, "assignment size differs from pattern size");
  }
  std::vector<bool> seen(k, false);
  for (std::size_t a : assignment) {
    if (a >= k || seen[a]) {
      throw Error(ErrorKind::InvalidArgument, "assignment is not a bijection");
    }
    seen[a] = true;
  }
}

// Scaled residual cloud {mu*q_i - p_sigma(i)}; its enclosing-ball radius is
// the best achievable max deviation (in pattern units) for scale 1/mu.
Ball residual_ball(const PointSet& q, const Pattern& p, std::span<const std::size_t> sigma,
                   double mu) {
  std::vector<Point> cloud;
  cloud.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) cloud.push_back(mu * q[i] - p[sigma[i]]);
  return min_enclosing_ball(cloud);
}

// Interior angle at a of triangle (a, b, c), numerically stable for thin
// triangles.
double angle_at(const Point& a, const Point& b, const Point& c) {
  const Point u = b - a;
  const Point v = c - a;
  const Point un = (1.0 / norm(u)) * u;
  const Point vn = (1.0 / norm(v)) * v;
  return 2.0 * std::atan2(norm(un - vn), norm(un + vn));
}

}  // namespace

VerifyResult verify_ap(std::span<const double> q, double eps) {
  if (q.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "arithmetic progression check needs k >= 3");
  }
  if (!(eps >= 0.0) || eps > 1.0 / 3.0) {
    throw Error(ErrorKind::Domain, "eps must lie in [0, 1/3]");
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i])) throw Error(ErrorKind::InvalidArgument, "non-finite value");
    if (i > 0 && !(q[i] > q[i - 1])) {
      throw Error(ErrorKind::InvalidArgument,
                  q[i] == q[i - 1] ? "duplicate values" : "values are not sorted");
    }
  }

  // With w = 1/r the deviation is the convex piecewise-linear spread of
  // w*q_i - i; its breakpoints are the w where two of those lines cross.
  double best_w = 0.0;
  double best_dev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < q.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double w = static_cast<double>(i - j) / (q[i] - q[j]);
      const double dev = ap_spread(q, w).first;
      if (dev < best_dev) {
        best_dev = dev;
        best_w = w;
      }
    }
  }
  const auto [dev, mid] = ap_spread(q, best_w);
  const double r = 1.0 / best_w;
  VerifyResult out;
  out.max_relative_deviation = std::max(dev, 0.0);
  out.witness_scale = r;
  out.witness_anchor = Point{mid * r};
  out.accepted = out.max_relative_deviation <= eps + kFeasibilityTol;
  return out;
}

VerifyResult verify_homothetic(const PointSet& q, const Pattern& p,
                               std::span<const std::size_t> assignment, double eps) {
  if (q.size() != p.size()) {
    throw Error(ErrorKind::InvalidArgument, "candidate and pattern sizes differ");
  }
  if (q.dim() != p.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "candidate and pattern dimensions differ");
  }
  if (!(eps >= 0.0) || eps > 1.0 / 3.0) {
    throw Error(ErrorKind::Domain, "eps must lie in [0, 1/3]");
  }
  check_assignment(assignment, p.size());

  const double m_p = p.min_pairwise();
  const double diam_q = diameter(q);

  double best_mu = 1.0;
  double best_h = std::numeric_limits<double>::infinity();
  auto consider = [&](double mu) {
    const double h = residual_ball(q, p, assignment, mu).radius;
    if (h < best_h) {
      best_h = h;
      best_mu = mu;
    }
    return h;
  };

  if (diam_q > 0.0) {
    // Any scale feasible at eps <= 1/3 lies in [m_Q/(2 m_P), 3 diam_Q/diam_P];
    // the deviation is convex in mu = 1/scale, so golden-section on mu.
    const double m_q = min_pairwise_distance(q);
    const double lambda_hi = 3.0 * diam_q / p.diameter();
    const double lambda_lo = m_q > 0.0 ? m_q / (2.0 * m_p) : 1e-6 * diam_q / p.diameter();
    double lo = 1.0 / lambda_hi;
    double hi = 1.0 / lambda_lo;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = consider(x1);
    double f2 = consider(x2);
    while (hi - lo > 1e-10 * hi) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = consider(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = consider(x2);
      }
    }
    consider((lo + hi) / 2.0);

    // Least-squares scale: exact for exact copies, where golden-section only
    // gets within the bracket width.
    const Point q_mean = [&] {
      Point acc = Point::zero(q.dim());
      for (const Point& x : q) acc = acc + x;
      return (1.0 / static_cast<double>(q.size())) * acc;
    }();
    const Point p_mean = [&] {
      Point acc = Point::zero(p.dim());
      for (const Point& x : p.points()) acc = acc + x;
      return (1.0 / static_cast<double>(p.size())) * acc;
    }();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const Point dp = p[assignment[i]] - p_mean;
      num += dot(q[i] - q_mean, dp);
      den += dot(dp, dp);
    }
    if (num > 0.0 && den > 0.0) consider(den / num);
  } else {
    consider(1.0);
  }

  const Ball ball = residual_ball(q, p, assignment, best_mu);
  VerifyResult out;
  out.witness_scale = 1.0 / best_mu;
  out.witness_anchor = out.witness_scale * ball.center;
  out.max_relative_deviation = ball.radius / m_p;
  out.accepted = out.max_relative_deviation <= eps + kFeasibilityTol;
  return out;
}

CollinearCheck verify_collinear(const PointSet& q, double eps) {
  if (q.size() < 3) {
    throw Error(ErrorKind::InvalidArgument, "collinearity check needs at least 3 points");
  }
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw Error(ErrorKind::Domain, "eps must lie in (0, 1)");
  }
  if (!(min_pairwise_distance(q) > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "duplicate points: angles undefined");
  }
  CollinearCheck out;
  out.worst_angle = -1.0;
  const std::size_t n = q.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::array<double, 3> ang{angle_at(q[a], q[b], q[c]), angle_at(q[b], q[c], q[a]),
                                        angle_at(q[c], q[a], q[b])};
        std::array<double, 3> sorted = ang;
        std::sort(sorted.begin(), sorted.end());
        if (sorted[1] > out.worst_angle) {
          out.worst_angle = sorted[1];
          out.worst_triangle = {a, b, c};
          out.worst_angles = ang;
        }
      }
    }
  }
  out.accepted = out.worst_angle <= eps + kFeasibilityTol;
  return out;
}

double cylinder_radius(const PointSet& q) {
  if (q.size() < 2) {
    throw Error(ErrorKind::FewerThanTwoPoints, "cylinder radius needs two points");
  }
  std::size_t bi = 0;
  std::size_t bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      const double d2 = squared_distance(q[i], q[j]);
      if (d2 > best) {
        best = d2;
        bi = i;
        bj = j;
      }
    }
  }
  if (!(best > 0.0)) return 0.0;
  const Point axis = (1.0 / std::sqrt(best)) * (q[bj] - q[bi]);
  double radius = 0.0;
  for (const Point& x : q) {
    const Point w = x - q[bi];
    radius = std::max(radius, norm(w - dot(w, axis) * axis));
  }
  return radius;
}

}  // namespace apxpat
