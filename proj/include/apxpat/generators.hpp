#pragma once

#include <cstddef>
#include <cstdint>

#include "apxpat/geometry.hpp"

namespace apxpat {

/// splitmix64 stream; next_double() fills a 53-bit mantissa, giving a value
/// in [0, 1). Reproducible bit-for-bit across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  double next_double();

 private:
  std::uint64_t state_;
};

/// Dart throwing in [0, L]^d with a delta grid hash.
PointSet gen_random_separated(std::size_t d, double length, double delta,
                              std::size_t target_count, std::uint64_t seed);

/// One point per unit lattice cell of [0, L)^d: cell centre plus uniform
/// jitter in [-jitter, jitter]^d.
PointSet gen_jittered_lattice(std::size_t d, double length, double jitter, std::uint64_t seed);

enum class AdversarialVariant { Xi, Eighth };

/// Geometric sequences with no eps-approximate 3-term progression:
/// {xi^i} with xi = 1/3 - eps, or {8^-i}.
PointSet gen_adversarial_ap3(std::size_t n, AdversarialVariant variant, double eps);

}  // namespace apxpat
