// End-to-end acceptance runs. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "apxpat/bounds.hpp"
#include "apxpat/collinear.hpp"
#include "apxpat/error.hpp"
#include "apxpat/generators.hpp"
#include "apxpat/io.hpp"
#include "apxpat/oracle.hpp"
#include "apxpat/search.hpp"
#include "apxpat/verifier.hpp"
#include "trace_checks.hpp"

namespace {

using namespace apxpat;
using nlohmann::json;

constexpr double kThird = 1.0 / 3.0;

struct Report {
  bool pass = true;
  std::string detail;
  // Serialised JSON and SVG produced by the run, compared across repeats.
  std::string artifacts;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

std::vector<double> coords_1d(const PointSet& s) {
  std::vector<double> v;
  for (const Point& p : s) v.push_back(p[0]);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<std::size_t> identity(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

SearchOptions fixed_box(Point low, double side) {
  SearchOptions o;
  o.low = std::move(low);
  o.length = side;
  return o;
}

std::string svg_of(const PointSet& s, const SearchOutcome& out) {
  io::SvgOptions o;
  o.highlight = out.subset;
  o.anchors = out.anchors;
  return io::emit_svg(s, o);
}

Report guarantee_1d() {
  Report r;
  const double L = 13122.0;
  const Schedule sch = schedule_1d(3, 0.4, 1.0, kThird);
  r.require(sch.threshold == L && sch.depth == 4, "schedule does not give Z0 = 13122, j = 4");
  const auto count = static_cast<std::size_t>(std::ceil(0.4 * L));
  std::size_t found = 0;
  std::size_t max_steps = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PointSet s = gen_random_separated(1, L, 1.0, count, seed);
    const SearchOutcome out = search_ap(s, 3, kThird, 1.0, 0.4, fixed_box(Point{0.0}, L));
    max_steps = std::max(max_steps, out.trace.steps.size());
    r.require(out.found, "seed " + std::to_string(seed) + " not found");
    if (!out.found) continue;
    r.require(out.trace.steps.size() <= 4, "more than j = 4 steps");
    r.require(verify_ap(coords_1d(s.subset(out.subset)), kThird).accepted,
              "independent re-verification rejected seed " + std::to_string(seed));
    ++found;
    r.artifacts += io::to_json(out, true).dump();
    if (seed == 1) r.artifacts += svg_of(s, out);
  }
  if (r.pass) {
    r.detail = std::to_string(found) + "/20 found, at most " + std::to_string(max_steps) +
               " step(s), all re-verified";
  }
  return r;
}

Report adversarial() {
  Report r;
  const struct {
    const char* name;
    PointSet set;
  } cases[] = {{"xi", gen_adversarial_ap3(8, AdversarialVariant::Xi, 0.25)},
               {"eighth", gen_adversarial_ap3(8, AdversarialVariant::Eighth, 0.25)}};
  double closest_exact = INFINITY;
  double closest_grid = INFINITY;
  for (const auto& c : cases) {
    const auto aps = oracle::enumerate_aps(c.set, 3, 0.25);
    r.require(aps.empty(), std::string(c.name) + ": enumerate_aps found a progression");
    const std::vector<double> v = coords_1d(c.set);
    std::size_t triples = 0;
    json devs = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        for (std::size_t k = j + 1; k < v.size(); ++k) {
          const double q[] = {v[i], v[j], v[k]};
          const VerifyResult exact = verify_ap(q, 0.25);
          // Deviations sit far above 0.25, so a shorter zoom schedule suffices.
          const double grid = oracle::grid_search_ap(q, 400, 2).deviation;
          r.require(!exact.accepted, std::string(c.name) + ": verifier accepted a triple");
          r.require(grid > 0.25, std::string(c.name) + ": grid oracle accepted a triple");
          closest_exact = std::min(closest_exact, exact.max_relative_deviation);
          closest_grid = std::min(closest_grid, grid);
          devs.push_back(exact.max_relative_deviation);
          ++triples;
        }
      }
    }
    r.require(triples == 56, "expected 56 triples");
    r.artifacts += json{{c.name, devs}}.dump();
  }
  if (r.pass) {
    r.detail = "112 triples rejected; smallest deviation " + io::format_double(closest_exact) +
               " (grid oracle " + io::format_double(closest_grid) + ")";
  }
  return r;
}

Report constants() {
  Report r;
  auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
  r.require(kappa(2) == 3, "kappa(2) != 3");
  r.require(kappa(1) == 2, "kappa(1) != 2");
  r.require(rel(ball_volume(2, 1.0), std::numbers::pi), "ball_volume(2,1) != pi");
  r.require(rel(ball_volume(3, 1.0), 4.0 * std::numbers::pi / 3.0), "ball_volume(3,1) != 4pi/3");
  r.artifacts = json{{"kappa", {kappa(1), kappa(2), kappa(3)}},
                     {"vol", {ball_volume(2, 1.0), ball_volume(3, 1.0)}}}
                    .dump();
  if (r.pass) r.detail = "kappa(1)=2, kappa(2)=3, unit disk and ball volumes exact";
  return r;
}

Report lattice_2d() {
  Report r;
  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PointSet s = gen_jittered_lattice(2, 30.0, 0.4, seed);
    const SearchOutcome out = search_grid(s, 3, kThird, 0.2, 1.0, fixed_box(Point{0.0, 0.0}, 30.0));
    const std::string tag = "seed " + std::to_string(seed);
    r.require(out.schedule.stride == 5, "stride is not 5");
    r.require(out.found, tag + " not found");
    if (!out.found) continue;
    const SearchStep& first = out.trace.steps.front();
    r.require(out.trace.steps.size() == 1 && first.action == StepAction::Success,
              tag + " did not succeed at step 0");
    r.require(first.offset == std::vector<std::size_t>{0, 0}, tag + " used a system other than (0,0)");
    r.require(verify_homothetic(s.subset(out.subset), Pattern::grid(2, 3), identity(9), kThird)
                  .accepted,
              tag + " failed re-verification");
    ok += r.pass ? 1 : 0;
    r.artifacts += io::to_json(out, true).dump();
    if (seed == 1) r.artifacts += svg_of(s, out);
  }
  if (r.pass) r.detail = std::to_string(ok) + "/10 seeds succeed at step 0 with t=(0,0)";
  return r;
}

Report soundness_fuzz() {
  Report r;
  SplitMix64 rng(20240601);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_double(); };
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng.next() % n); };
  std::size_t runs = 0;
  std::size_t hits = 0;
  std::size_t per_mode[3] = {0, 0, 0};
  json log = json::array();
  while (runs < 1000) {
    const std::size_t mode = runs % 3;
    const double eps = uniform(0.05, kThird);
    const double delta = uniform(0.5, 2.0);
    const double c = uniform(0.05, 0.6);
    const std::uint64_t seed = rng.next();
    SearchOutcome out;
    PointSet s = PointSet::line({0.0});
    std::function<bool()> recheck;
    try {
      if (mode == 0) {
        const double L = uniform(50.0, 3000.0);
        const auto n = static_cast<std::size_t>(uniform(0.05, 0.45) * L / delta);
        s = gen_random_separated(1, L, delta, std::max<std::size_t>(n, 3), seed);
        const std::size_t k = 3 + pick(4);
        out = search_ap(s, k, eps, delta, c);
        recheck = [&] { return verify_ap(coords_1d(s.subset(out.subset)), eps).accepted; };
      } else if (mode == 1) {
        const std::size_t d = 1 + pick(2);
        const double L = d == 1 ? uniform(50.0, 2000.0) : uniform(10.0, 60.0);
        const double vol = std::pow(L, static_cast<double>(d));
        const double fill = uniform(0.05, 0.35) / ball_volume(d, delta / 2.0);
        const auto n = static_cast<std::size_t>(fill * vol);
        s = gen_random_separated(d, L, delta, std::max<std::size_t>(n, 2), seed);
        const std::size_t k = 2 + pick(2);
        out = search_grid(s, k, eps, delta, c);
        recheck = [&, d, k] {
          return verify_homothetic(s.subset(out.subset), Pattern::grid(d, k),
                                   identity(out.subset.size()), eps)
              .accepted;
        };
      } else {
        const std::size_t d = 1 + pick(2);
        const std::size_t size = 3 + pick(2);
        std::vector<Point> pat;
        for (int tries = 0; pat.size() < size; ++tries) {
          if (tries % 50 == 49) pat.clear();  // restart from a crowded start
          std::vector<double> x(d);
          for (double& v : x) v = std::round(uniform(0.0, 3.0) * 4.0) / 4.0;
          Point p(x);
          bool far = true;
          for (const Point& q : pat) far = far && distance(p, q) >= 0.75;
          if (far) pat.push_back(p);
        }
        const Pattern p(pat);
        const double L = d == 1 ? uniform(200.0, 3000.0) : uniform(30.0, 120.0);
        const double vol = std::pow(L, static_cast<double>(d));
        const double fill = uniform(0.1, 0.35) / ball_volume(d, delta / 2.0);
        s = gen_random_separated(d, L, delta, static_cast<std::size_t>(fill * vol) + 3, seed);
        out = search_pattern(s, p, std::max(eps, 0.15), delta, c);
        const double e = std::max(eps, 0.15);
        recheck = [&, p, e] {
          return verify_homothetic(s.subset(out.subset), p, identity(p.size()), e).accepted;
        };
      }
    } catch (const Error& e) {
      r.require(false, std::string("run raised ") + to_string(e.kind()) + ": " + e.what());
      ++runs;
      continue;
    }
    ++runs;
    ++per_mode[mode];
    const std::string why = testing::trace_violation(out);
    r.require(why.empty(), "trace invariant (mode " + std::to_string(mode) + "): " + why);
    if (out.found) {
      ++hits;
      std::vector<std::size_t> u = out.subset;
      std::sort(u.begin(), u.end());
      r.require(std::adjacent_find(u.begin(), u.end()) == u.end(), "repeated index in subset");
      r.require(out.verify && out.verify->accepted, "found=true with a failing certificate");
      r.require(recheck(), "found=true but independent re-verification failed");
    }
    log.push_back({out.found, out.trace.steps.size()});
  }
  r.artifacts = log.dump();
  if (r.pass) {
    r.detail = std::to_string(runs) + " runs (" + std::to_string(per_mode[0]) + " ap, " +
               std::to_string(per_mode[1]) + " grid, " + std::to_string(per_mode[2]) +
               " pattern), " + std::to_string(hits) + " found, no violations";
  }
  return r;
}

Report cross_validation() {
  Report r;
  SplitMix64 rng(77);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_double(); };
  constexpr double kBand = 1e-3;
  std::size_t compared = 0;
  std::size_t banded = 0;
  std::size_t accepted = 0;
  double worst_gap = 0.0;
  json log = json::array();

  for (int i = 0; i < 200; ++i) {
    const std::size_t k = 3 + static_cast<std::size_t>(i % 2);
    const double noise = uniform(0.0, 1.2);
    std::vector<double> q;
    for (std::size_t t = 0; t < k; ++t) q.push_back(static_cast<double>(t) + noise * uniform(-0.5, 0.5));
    std::sort(q.begin(), q.end());
    if (q[1] - q[0] < 1e-6 || q[k - 1] - q[k - 2] < 1e-6) continue;
    const double eps = uniform(0.02, kThird);
    const VerifyResult exact = verify_ap(q, eps);
    const double grid = oracle::grid_search_ap(q).deviation;
    worst_gap = std::max(worst_gap, grid - exact.max_relative_deviation);
    r.require(grid >= exact.max_relative_deviation - 1e-9, "grid oracle beat the exact optimum (1-D)");
    log.push_back({exact.accepted, exact.max_relative_deviation});
    if (std::abs(exact.max_relative_deviation - eps) <= kBand || std::abs(grid - eps) <= kBand) {
      ++banded;
      continue;
    }
    ++compared;
    accepted += exact.accepted ? 1 : 0;
    r.require(exact.accepted == (grid <= eps), "1-D disagreement outside the band");
  }

  for (int i = 0; i < 100; ++i) {
    const std::size_t k = 3 + static_cast<std::size_t>(i % 2);
    std::vector<Point> pat;
    while (pat.size() < k) {
      Point p{uniform(0.0, 1.0), uniform(0.0, 1.0)};
      bool far = true;
      for (const Point& q : pat) far = far && distance(p, q) >= 0.25;
      if (far) pat.push_back(p);
    }
    const Pattern p(pat);
    const double lambda = uniform(0.5, 5.0);
    const Point a{uniform(-3.0, 3.0), uniform(-3.0, 3.0)};
    const double noise = uniform(0.0, 0.6) * lambda * p.min_pairwise();
    std::vector<Point> qs;
    for (const Point& x : pat) {
      qs.push_back(a + lambda * x + Point{noise * uniform(-1.0, 1.0), noise * uniform(-1.0, 1.0)});
    }
    const PointSet q(qs);
    const double eps = uniform(0.05, kThird);
    const VerifyResult exact = verify_homothetic(q, p, identity(k), eps);
    const double grid = oracle::grid_search_homothetic(q, p, identity(k)).deviation;
    worst_gap = std::max(worst_gap, grid - exact.max_relative_deviation);
    r.require(grid >= exact.max_relative_deviation - 1e-9, "grid oracle beat the optimum (2-D)");
    log.push_back({exact.accepted, exact.max_relative_deviation});
    if (std::abs(exact.max_relative_deviation - eps) <= kBand || std::abs(grid - eps) <= kBand) {
      ++banded;
      continue;
    }
    ++compared;
    accepted += exact.accepted ? 1 : 0;
    r.require(exact.accepted == (grid <= eps), "2-D disagreement outside the band");
  }
  r.artifacts = log.dump();
  if (r.pass) {
    r.detail = std::to_string(compared) + " agree (" + std::to_string(accepted) + " accepted), " +
               std::to_string(banded) + " in the 1e-3 band, max oracle gap " +
               io::format_double(worst_gap);
  }
  return r;
}

PointSet planted_tube(std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Point> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(Point{rng.next_double(), rng.next_double()});
  const Point centre{0.25 + 0.5 * rng.next_double(), 0.25 + 0.5 * rng.next_double()};
  const double theta = std::numbers::pi * rng.next_double();
  const Point dir{std::cos(theta), std::sin(theta)};
  const Point normal{-std::sin(theta), std::cos(theta)};
  for (int i = 0; i < 10; ++i) {
    const double t = 0.5 * (rng.next_double() - 0.5);
    const double w = 0.001 * (2.0 * rng.next_double() - 1.0);
    pts.push_back(centre + t * dir + w * normal);
  }
  return PointSet(pts);
}

Report collinear_pipeline() {
  Report r;
  std::size_t found = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PointSet s = planted_tube(seed);
    const CollinearSearch res = find_collinear(s, 8, 0.1);
    const std::string tag = "seed " + std::to_string(seed);
    r.require(res.status == CollinearStatus::Found, tag + " found no subset");
    if (res.status != CollinearStatus::Found) continue;
    const PointSet sub = s.subset(res.subset);
    r.require(res.subset.size() == 8, tag + " wrong subset size");
    r.require(verify_collinear(sub, 0.1).accepted, tag + " certificate rejected");
    r.require(cylinder_radius(sub) <= 0.1 * diameter(sub), tag + " outside the cylinder bound");
    ++found;
    r.artifacts += io::to_json(res).dump();
    if (seed == 1) {
      io::SvgOptions o;
      o.highlight = res.subset;
      r.artifacts += io::emit_svg(s, o);
    }
  }
  std::vector<Point> pentagon;
  for (int i = 0; i < 5; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 5.0;
    pentagon.push_back(Point{std::cos(a), std::sin(a)});
  }
  const CollinearSearch pent = find_collinear(PointSet(pentagon), 5, 0.01);
  r.require(pent.status == CollinearStatus::Exhausted, "pentagon not reported as exhausted");
  r.artifacts += io::to_json(pent).dump();
  if (r.pass) r.detail = std::to_string(found) + "/10 planted tubes certified; pentagon exhausted";
  return r;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  Report (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "1-D guarantee at Z0 = 13122", 10.0, guarantee_1d},
      {2, "adversarial sets have no 3-term progression", 1.0, adversarial},
      {3, "packing constants and ball volumes", 1.0, constants},
      {4, "2-D jittered lattice succeeds at step 0", 2.0, lattice_2d},
      {5, "soundness fuzz over 1000 searches", 60.0, soundness_fuzz},
      {6, "verifier agrees with grid-search oracle", 30.0, cross_validation},
      {7, "collinear finder on planted tubes and pentagon", 10.0, collinear_pipeline},
  };

  int failures = 0;
  std::vector<std::string> first_artifacts;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = c.run();
    } catch (const std::exception& e) {
      rep.pass = false;
      rep.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (rep.pass && secs > c.budget_seconds) {
      rep.pass = false;
      rep.detail = "exceeded the " + io::format_double(c.budget_seconds) + " s budget";
    }
    failures += rep.pass ? 0 : 1;
    first_artifacts.push_back(rep.artifacts);
    std::printf("criterion %d: %s  %s  [%s] (%.2f s)\n", c.id, rep.pass ? "PASS" : "FAIL", c.title,
                rep.detail.c_str(), secs);
    std::fflush(stdout);
  }

  // Determinism: repeat every run and compare serialised outputs byte for byte.
  std::size_t bytes = 0;
  std::string mismatch;
  for (std::size_t i = 0; i < std::size(criteria); ++i) {
    std::string again;
    try {
      again = criteria[i].run().artifacts;
    } catch (const std::exception& e) {
      again = e.what();
    }
    bytes += again.size();
    if (again != first_artifacts[i] && mismatch.empty()) {
      mismatch = "criterion " + std::to_string(criteria[i].id) + " output differs on repeat";
    }
  }
  const bool same = mismatch.empty();
  failures += same ? 0 : 1;
  std::printf("criterion 8: %s  repeated runs are byte-identical  [%s]\n", same ? "PASS" : "FAIL",
              same ? (std::to_string(bytes) + " bytes of JSON/SVG compared").c_str()
                   : mismatch.c_str());
  return failures == 0 ? 0 : 1;
}
