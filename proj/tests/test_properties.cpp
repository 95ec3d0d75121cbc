// Cross-module properties: invariances, agreement between independent
// routes, and bounds that must hold on every successful search.
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "apxpat/collinear.hpp"
#include "apxpat/generators.hpp"
#include "apxpat/oracle.hpp"
#include "apxpat/search.hpp"
#include "apxpat/verifier.hpp"

using namespace apxpat;

namespace {

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

PointSet transform(const PointSet& q, double alpha, const Point& beta) {
  std::vector<Point> out;
  for (const Point& x : q) out.push_back(alpha * x + beta);
  return PointSet(out);
}

}  // namespace

TEST_CASE("homothetic verification is affine invariant") {
  SplitMix64 rng(31);
  const Pattern tri({Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.3, 0.8}});
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts;
    for (const Point& p : tri.points()) {
      pts.push_back(2.0 * p + Point{0.6 * (rng.next_double() - 0.5), 0.6 * (rng.next_double() - 0.5)});
    }
    const PointSet q(pts);
    const double alpha = 0.1 + 9.9 * rng.next_double();
    const Point beta{20.0 * rng.next_double() - 10.0, 20.0 * rng.next_double() - 10.0};
    const VerifyResult a = verify_homothetic(q, tri, identity(3), 0.2);
    const VerifyResult b = verify_homothetic(transform(q, alpha, beta), tri, identity(3), 0.2);
    CHECK(a.accepted == b.accepted);
    CHECK(a.max_relative_deviation == doctest::Approx(b.max_relative_deviation).epsilon(1e-7));
    CHECK(b.witness_scale == doctest::Approx(alpha * a.witness_scale).epsilon(1e-5));
  }
}

TEST_CASE("progression and homothetic verifiers agree") {
  SplitMix64 rng(41);
  int accepted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + static_cast<std::size_t>(trial % 3);
    std::vector<double> q;
    std::vector<Point> pattern;
    for (std::size_t i = 0; i < k; ++i) {
      q.push_back(static_cast<double>(i) + 0.9 * (rng.next_double() - 0.5));
      pattern.push_back(Point{static_cast<double>(i)});
    }
    std::sort(q.begin(), q.end());
    const double eps = 0.05 + 0.28 * rng.next_double();
    const VerifyResult lp = verify_ap(q, eps);
    const VerifyResult meb = verify_homothetic(PointSet::line(q), Pattern(pattern), identity(k), eps);
    if (std::abs(lp.max_relative_deviation - eps) > 1e-6) CHECK(lp.accepted == meb.accepted);
    CHECK(lp.max_relative_deviation == doctest::Approx(meb.max_relative_deviation).epsilon(1e-6));
    accepted += lp.accepted ? 1 : 0;
  }
  CHECK(accepted > 20);
  CHECK(accepted < 180);
}

TEST_CASE("acceptance is monotone in eps") {
  SplitMix64 rng(43);
  const double grid[] = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 1.0 / 3.0};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> q;
    for (int i = 0; i < 4; ++i) q.push_back(i + 0.6 * (rng.next_double() - 0.5));
    std::sort(q.begin(), q.end());
    bool seen = false;
    for (double eps : grid) {
      const bool now = verify_ap(q, eps).accepted;
      CHECK((!seen || now));
      seen = seen || now;
    }
  }
}

TEST_CASE("exact copies verify with zero deviation") {
  SplitMix64 rng(47);
  const Pattern p({Point{0.0, 0.0}, Point{2.0, 1.0}, Point{-1.0, 3.0}, Point{1.0, 1.0}});
  for (int trial = 0; trial < 20; ++trial) {
    const Homothety h(Point{rng.next_double() * 10, rng.next_double() * 10}, 0.5 + 3 * rng.next_double());
    const VerifyResult r = verify_homothetic(apply_homothety(h, p), p, identity(4), 0.0);
    CHECK(r.accepted);
    CHECK(r.max_relative_deviation == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("every found progression is also found by the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const PointSet s = gen_random_separated(1, 200.0, 1.0, 40, seed);
    const SearchOutcome out = search_ap(s, 3, 1.0 / 3.0, 1.0, 0.2);
    if (!out.found) continue;
    const auto all = oracle::enumerate_aps(s, 3, 1.0 / 3.0);
    CHECK_FALSE(all.empty());
    std::vector<std::size_t> mine = out.subset;
    std::sort(mine.begin(), mine.end(), [&](std::size_t a, std::size_t b) { return s[a][0] < s[b][0]; });
    CHECK(std::find(all.begin(), all.end(), mine) != all.end());
  }
}

TEST_CASE("oracle output does not depend on input order") {
  SplitMix64 rng(53);
  std::vector<double> v;
  for (int i = 0; i < 9; ++i) v.push_back(rng.next_double() * 10);
  std::vector<std::size_t> perm = identity(v.size());
  std::reverse(perm.begin(), perm.end());
  std::rotate(perm.begin(), perm.begin() + 4, perm.end());
  std::vector<double> w;
  for (std::size_t i : perm) w.push_back(v[i]);
  const auto a = oracle::enumerate_aps(PointSet::line(v), 3, 0.2);
  const auto b = oracle::enumerate_aps(PointSet::line(w), 3, 0.2);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    for (std::size_t i = 0; i < a[t].size(); ++i) CHECK(v[a[t][i]] == w[b[t][i]]);
  }
}

TEST_CASE("grid search in one dimension matches progression search") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PointSet s = gen_random_separated(1, 300.0, 1.0, 120, seed);
    const SearchOutcome ap = search_ap(s, 3, 1.0 / 3.0, 1.0, 0.4);
    const SearchOutcome grid = search_grid(s, 3, 1.0 / 3.0, 1.0, 0.4);
    // With d = 1 both strides are ceil(1/eps), so the runs coincide.
    CHECK(ap.schedule.stride == grid.schedule.stride);
    CHECK(ap.found == grid.found);
    CHECK(ap.subset == grid.subset);
    CHECK(ap.trace.steps.size() == grid.trace.steps.size());
  }
}

TEST_CASE("returned points lie within x*sqrt(d) of their anchors") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t d = 1 + seed % 2;
    const PointSet s = d == 1 ? gen_random_separated(1, 2000.0, 1.0, 700, seed)
                              : gen_jittered_lattice(2, 45.0, 0.3, seed);
    const SearchOutcome out = search_grid(s, 3, 0.25, 0.3, 0.4);
    if (!out.found) continue;
    const double x = out.trace.steps.back().box.side / static_cast<double>(3 * out.schedule.stride);
    for (std::size_t i = 0; i < out.subset.size(); ++i) {
      const double gap = distance(s[out.subset[i]], out.anchors[i]);
      CHECK(gap <= x * std::sqrt(static_cast<double>(d)) * (1 + 1e-12));
      CHECK(gap <= 0.25 * out.homothety->scale() * (1 + 1e-12));
    }
  }
}

TEST_CASE("angle colouring is a partition into narrow buckets") {
  SplitMix64 rng(59);
  std::vector<Point> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
  const PointSet s(pts);
  const AngleColoring col(s, 0.2);
  CHECK(col.width() <= 0.2);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      CHECK(col.bucket(i, j) < col.buckets());
      CHECK(col.bucket(i, j) == col.bucket(j, i));
    }
  }
}

TEST_CASE("monochromatic triples are collinear") {
  SplitMix64 rng(61);
  std::vector<Point> pts;
  for (int i = 0; i < 60; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
  const PointSet s(pts);
  const double eps = 0.3;
  const AngleColoring col(s, eps);
  std::size_t mono = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      for (std::size_t k = j + 1; k < s.size(); ++k) {
        if (col.bucket(i, j) != col.bucket(i, k) || col.bucket(i, j) != col.bucket(j, k)) continue;
        ++mono;
        const std::size_t idx[] = {i, j, k};
        CHECK(verify_collinear(s.subset(idx), eps).accepted);
      }
    }
  }
  CHECK(mono > 100);
}

TEST_CASE("collinear search is deterministic") {
  SplitMix64 rng(67);
  std::vector<Point> pts;
  for (int i = 0; i < 80; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
  const PointSet s(pts);
  const CollinearSearch a = find_collinear(s, 5, 0.15);
  const CollinearSearch b = find_collinear(s, 5, 0.15);
  CHECK(a.status == b.status);
  CHECK(a.subset == b.subset);
  CHECK(a.nodes == b.nodes);
}
