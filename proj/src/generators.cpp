#include "apxpat/generators.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "apxpat/bounds.hpp"
#include "apxpat/error.hpp"

namespace apxpat {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

PointSet gen_random_separated(std::size_t d, double length, double delta,
                              std::size_t target_count, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorKind::Domain, "dimension must be positive");
  if (!(length > 0.0) || !(delta > 0.0) || !std::isfinite(length) || !std::isfinite(delta)) {
    throw Error(ErrorKind::Domain, "length and delta must be positive");
  }
  if (target_count == 0) throw Error(ErrorKind::Domain, "target count must be positive");
  const double packing = static_cast<double>(target_count) * ball_volume(d, delta / 2.0);
  if (packing > std::pow(length + delta, static_cast<double>(d))) {
    throw Error(ErrorKind::InfeasibleGeneration,
                std::to_string(target_count) + " points cannot be " + std::to_string(delta) +
                    "-separated in a cube of side " + std::to_string(length));
  }

  SplitMix64 rng(seed);
  SpatialHash hash(d, delta);
  std::vector<Point> accepted;
  accepted.reserve(target_count);
  const double max_attempts = 1e6 * static_cast<double>(target_count);
  std::vector<double> c(d);
  for (double attempt = 0; accepted.size() < target_count; attempt += 1.0) {
    if (attempt >= max_attempts) {
      throw Error(ErrorKind::InfeasibleGeneration,
                  "attempt budget exhausted after " + std::to_string(accepted.size()) + " points");
    }
    for (std::size_t a = 0; a < d; ++a) c[a] = length * rng.next_double();
    Point p(c);
    if (hash.any_closer_than(p, delta)) continue;
    hash.insert(p);
    accepted.push_back(std::move(p));
  }
  return PointSet(std::move(accepted));
}

PointSet gen_jittered_lattice(std::size_t d, double length, double jitter, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorKind::Domain, "dimension must be positive");
  if (!(length >= 1.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::Domain, "lattice length must be at least 1");
  }
  if (!(jitter >= 0.0) || !(jitter < 0.5)) {
    throw Error(ErrorKind::Domain, "jitter must lie in [0, 0.5)");
  }
  const auto per_axis = static_cast<std::size_t>(std::floor(length));
  std::size_t total = 1;
  for (std::size_t a = 0; a < d; ++a) total *= per_axis;

  SplitMix64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(total);
  std::vector<std::size_t> cell(d, 0);
  std::vector<double> c(d);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t rem = n;
    for (std::size_t a = d; a-- > 0;) {
      cell[a] = rem % per_axis;
      rem /= per_axis;
    }
    for (std::size_t a = 0; a < d; ++a) {
      c[a] = static_cast<double>(cell[a]) + 0.5 + jitter * (2.0 * rng.next_double() - 1.0);
    }
    pts.emplace_back(c);
  }
  return PointSet(std::move(pts));
}

PointSet gen_adversarial_ap3(std::size_t n, AdversarialVariant variant, double eps) {
  if (n < 3) throw Error(ErrorKind::Domain, "adversarial sets need n >= 3");
  double ratio = 1.0 / 8.0;
  if (variant == AdversarialVariant::Xi) {
    if (!(eps >= 0.0) || !(eps < 1.0 / 3.0)) {
      throw Error(ErrorKind::Domain, "xi variant needs 0 <= eps < 1/3");
    }
    ratio = 1.0 / 3.0 - eps;
  }
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(ratio, static_cast<double>(i));
  return PointSet::line(v);
}

}  // namespace apxpat
