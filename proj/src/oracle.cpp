#include "apxpat/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "apxpat/error.hpp"
#include "apxpat/verifier.hpp"

namespace apxpat::oracle {
namespace {

void check_budget(std::uint64_t need, std::uint64_t budget, const char* what) {
  if (need > budget) {
    throw Error(ErrorKind::BudgetExceeded, std::string(what) + " needs " + std::to_string(need) +
                                               " candidates, budget is " +
                                               std::to_string(budget));
  }
}

// Advances a k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Law-of-cosines angles, deliberately a different formula from the verifier.
double second_smallest_angle(const Point& a, const Point& b, const Point& c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ca = distance(c, a);
  auto angle = [](double adj1, double adj2, double opp) {
    const double v = (adj1 * adj1 + adj2 * adj2 - opp * opp) / (2.0 * adj1 * adj2);
    return std::acos(std::clamp(v, -1.0, 1.0));
  };
  std::array<double, 3> ang{angle(ab, ca, bc), angle(ab, bc, ca), angle(bc, ca, ab)};
  std::sort(ang.begin(), ang.end());
  return ang[1];
}

struct GridProblem {
  // Row-major k x d arrays: targets and pattern offsets from the pattern centroid.
  std::vector<double> q;
  std::vector<double> offsets;
  std::size_t d = 1;
  std::size_t k = 0;
  double m_p = 1.0;

  void add(const Point& target, const Point& offset) {
    q.insert(q.end(), target.begin(), target.end());
    offsets.insert(offsets.end(), offset.begin(), offset.end());
    d = target.dim();
    ++k;
  }

  // max_i |q_i - c - lambda*offset_i| / (lambda m_P), with early exit.
  double deviation(const double* c, double lambda, double cutoff) const {
    const double limit = cutoff * lambda * m_p;
    const double limit2 = limit * limit;
    double worst = 0.0;
    const double* qi = q.data();
    const double* oi = offsets.data();
    for (std::size_t i = 0; i < k; ++i, qi += d, oi += d) {
      double r2 = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        const double r = qi[a] - c[a] - lambda * oi[a];
        r2 += r * r;
      }
      if (r2 > limit2) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, r2);
    }
    return std::sqrt(worst) / (lambda * m_p);
  }
};

// Half-width of the next level's window in grid steps: scales shrink 10x per
// level, anchors 4x so the anchor window keeps up as the scale moves.
double zoom(std::size_t res) { return std::max(2.0, static_cast<double>(res) / 20.0); }
double anchor_zoom(std::size_t res) { return std::max(2.0, static_cast<double>(res) / 8.0); }

// Anchors are parametrised per scale as c = mid(lambda) + u * half(lambda),
// where mid/half describe the bounding box of the residuals q_i - lambda*o_i.
// The optimal c always lies in that box, so u in [-1, 1]^d covers it, and the
// optimum moves little in u as lambda varies, which keeps zooming stable.
GridSearchResult grid_search(const GridProblem& prob, double lambda_lo, double lambda_hi,
                             std::size_t scale_res, std::size_t anchor_res,
                             std::size_t refinements) {
  const std::size_t d = prob.d;
  const std::size_t k = prob.k;
  double best = std::numeric_limits<double>::infinity();
  double best_lambda = lambda_lo;
  std::vector<double> best_c(d, 0.0);
  std::vector<double> best_u(d, 0.0);
  std::vector<double> u_lo(d, -1.0);
  std::vector<double> u_hi(d, 1.0);
  std::vector<double> mid(d);
  std::vector<double> half(d);
  std::vector<double> u(d);
  std::vector<double> c(d);
  std::vector<std::size_t> counter(d);

  for (std::size_t level = 0; level <= refinements; ++level) {
    const double log_lo = std::log(lambda_lo);
    const double log_hi = std::log(lambda_hi);
    for (std::size_t li = 0; li < scale_res; ++li) {
      const double t = scale_res == 1 ? 0.5 : static_cast<double>(li) / (scale_res - 1);
      const double lambda = std::exp(log_lo + t * (log_hi - log_lo));
      for (std::size_t a = 0; a < d; ++a) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t i = 0; i < k; ++i) {
          const double r = prob.q[i * d + a] - lambda * prob.offsets[i * d + a];
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        mid[a] = 0.5 * (lo + hi);
        half[a] = 0.5 * (hi - lo);
      }
      std::fill(counter.begin(), counter.end(), 0);
      while (true) {
        for (std::size_t a = 0; a < d; ++a) {
          const double w = anchor_res == 1 ? 0.5
                                           : static_cast<double>(counter[a]) / (anchor_res - 1);
          u[a] = u_lo[a] + w * (u_hi[a] - u_lo[a]);
          c[a] = mid[a] + u[a] * half[a];
        }
        const double dev = prob.deviation(c.data(), lambda, best);
        if (dev < best) {
          best = dev;
          best_lambda = lambda;
          best_c = c;
          best_u = u;
        }
        std::size_t a = 0;
        while (a < d && ++counter[a] == anchor_res) counter[a++] = 0;
        if (a == d) break;
      }
    }
    const double log_step = scale_res > 1 ? (log_hi - log_lo) / (scale_res - 1) : 0.0;
    lambda_lo = best_lambda * std::exp(-zoom(scale_res) * log_step);
    lambda_hi = best_lambda * std::exp(zoom(scale_res) * log_step);
    for (std::size_t a = 0; a < d; ++a) {
      const double step = anchor_res > 1 ? (u_hi[a] - u_lo[a]) / (anchor_res - 1) : 0.0;
      u_lo[a] = std::max(-1.0, best_u[a] - anchor_zoom(anchor_res) * step);
      u_hi[a] = std::min(1.0, best_u[a] + anchor_zoom(anchor_res) * step);
    }
  }

  GridSearchResult out;
  out.deviation = best;
  out.scale = best_lambda;
  out.anchor = Point(best_c);
  return out;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n-k+i) is divisible by i; cancel gcd(acc, i) first so the
    // remaining divisor goes into (n-k+i) exactly.
    const std::uint64_t g = std::gcd(acc, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    const std::uint64_t base = acc / g;
    if (base > kMax / factor) return kMax;
    acc = base * factor;
  }
  return acc;
}

std::vector<std::vector<std::size_t>> enumerate_aps(const PointSet& s, std::size_t k, double eps,
                                                    std::uint64_t budget) {
  if (s.dim() != 1) throw Error(ErrorKind::DimensionMismatch, "enumerate_aps expects 1-D input");
  if (k < 3) throw Error(ErrorKind::Domain, "k must be at least 3");
  if (s.size() < k) return {};
  check_budget(binomial(s.size(), k), budget, "enumerate_aps");

  std::vector<std::size_t> rank(s.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::stable_sort(rank.begin(), rank.end(),
                   [&](std::size_t a, std::size_t b) { return s[a][0] < s[b][0]; });

  std::vector<std::vector<std::size_t>> hits;
  std::vector<std::size_t> comb(k);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  std::vector<double> q(k);
  do {
    bool distinct = true;
    for (std::size_t i = 0; i < k; ++i) {
      q[i] = s[rank[comb[i]]][0];
      if (i > 0 && !(q[i] > q[i - 1])) distinct = false;
    }
    if (!distinct) continue;
    if (verify_ap(q, eps).accepted) {
      std::vector<std::size_t> tuple(k);
      for (std::size_t i = 0; i < k; ++i) tuple[i] = rank[comb[i]];
      hits.push_back(std::move(tuple));
    }
  } while (next_combination(comb, s.size()));
  return hits;
}

std::vector<HomotheticMatch> enumerate_homothetic(const PointSet& s, const Pattern& p, double eps,
                                                  std::uint64_t budget) {
  if (s.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "dimensions differ");
  const std::size_t k = p.size();
  if (k > 8) throw Error(ErrorKind::BudgetExceeded, "pattern larger than 8 points");
  if (s.size() < k) return {};
  std::uint64_t perms = 1;
  for (std::size_t i = 2; i <= k; ++i) perms *= i;
  const std::uint64_t subsets = binomial(s.size(), k);
  check_budget(subsets > budget / perms ? std::numeric_limits<std::uint64_t>::max()
                                        : subsets * perms,
               budget, "enumerate_homothetic");

  std::vector<HomotheticMatch> hits;
  std::vector<std::size_t> comb(k);
  std::iota(comb.begin(), comb.end(), std::size_t{0});
  do {
    const PointSet q = s.subset(comb);
    if (!(min_pairwise_distance(q) > 0.0)) continue;
    std::vector<std::size_t> sigma(k);
    std::iota(sigma.begin(), sigma.end(), std::size_t{0});
    do {
      if (verify_homothetic(q, p, sigma, eps).accepted) {
        hits.push_back(HomotheticMatch{comb, sigma});
        break;
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  } while (next_combination(comb, s.size()));
  return hits;
}

bool exists_collinear(const PointSet& s, std::size_t k, double eps, std::uint64_t budget) {
  if (k < 3) throw Error(ErrorKind::Domain, "k must be at least 3");
  if (s.size() < k) return false;
  check_budget(binomial(s.size(), k), budget, "exists_collinear");
  const std::size_t n = s.size();
  const double limit = eps + kFeasibilityTol;
  std::vector<std::size_t> chosen;

  auto fits = [&](std::size_t j) {
    for (std::size_t a = 0; a < chosen.size(); ++a) {
      for (std::size_t b = a + 1; b < chosen.size(); ++b) {
        if (second_smallest_angle(s[chosen[a]], s[chosen[b]], s[j]) > limit) return false;
      }
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t from) -> bool {
    if (chosen.size() == k) return true;
    for (std::size_t j = from; j + (k - chosen.size()) <= n; ++j) {
      if (!fits(j)) continue;
      chosen.push_back(j);
      if (self(self, j + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(search, 0);
}

GridSearchResult grid_search_ap(std::span<const double> q, std::size_t resolution,
                                std::size_t refinements) {
  if (q.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two values");
  std::vector<Point> pattern;
  for (std::size_t i = 0; i < q.size(); ++i) pattern.push_back(Point{static_cast<double>(i)});
  std::vector<Point> pts;
  for (double v : q) pts.push_back(Point{v});
  std::vector<std::size_t> identity(q.size());
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  return grid_search_homothetic(PointSet(std::move(pts)), Pattern(std::move(pattern)), identity,
                                resolution, resolution, refinements);
}

GridSearchResult grid_search_homothetic(const PointSet& q, const Pattern& p,
                                        std::span<const std::size_t> assignment,
                                        std::size_t scale_resolution,
                                        std::size_t anchor_resolution, std::size_t refinements) {
  if (q.size() != p.size() || assignment.size() != p.size()) {
    throw Error(ErrorKind::InvalidArgument, "size mismatch");
  }
  if (q.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "dimensions differ");
  const std::size_t d = q.dim();
  const std::size_t k = q.size();

  std::vector<double> centroid(d, 0.0);
  for (const Point& x : p.points()) {
    for (std::size_t a = 0; a < d; ++a) centroid[a] += x[a] / static_cast<double>(k);
  }
  GridProblem prob;
  prob.m_p = p.min_pairwise();
  for (std::size_t i = 0; i < k; ++i) {
    prob.add(q[i], p[assignment[i]] - Point(centroid));
  }

  const double diam_q = diameter(q);
  double m_q = diam_q;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) m_q = std::min(m_q, distance(q[i], q[j]));
  }
  if (!(diam_q > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "candidate points all coincide");
  }
  // Wide bracket: feasible scales at deviation <= 1/3 lie in
  // [0.6 m_Q/m_P, 3 diam_Q/diam_P].
  const double lambda_lo = std::max(m_q, 1e-12 * diam_q) / (4.0 * prob.m_p);
  const double lambda_hi = 4.0 * diam_q / p.diameter();

  GridSearchResult out =
      grid_search(prob, lambda_lo, lambda_hi, scale_resolution, anchor_resolution, refinements);
  std::vector<double> anchor(d);
  for (std::size_t a = 0; a < d; ++a) anchor[a] = out.anchor[a] - out.scale * centroid[a];
  out.anchor = Point(std::move(anchor));
  return out;
}

}  // namespace apxpat::oracle
