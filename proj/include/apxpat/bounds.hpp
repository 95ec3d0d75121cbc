#pragma once

#include <cstddef>

namespace apxpat {

/// Search parameters derived for one (d, k, c, delta, eps) instance.
///
/// `stride` is the subdivision stride s, so every step splits the current
/// box into (k*s)^d cells; `depth` is the maximal number of subdivision
/// steps j; `threshold` is the guarantee scale Z0 = 2*delta*(k*s)^j above
/// which the subdivision search cannot fail.
struct Schedule {
  std::size_t d = 1;
  std::size_t k = 2;
  double c = 0.0;
  double delta = 0.0;
  double eps = 0.0;
  std::size_t stride = 1;
  double ratio = 0.0;
  std::size_t depth = 1;
  double threshold = 0.0;
  std::size_t kappa = 2;
};

inline constexpr std::size_t kMaxBoundsDim = 30;

Schedule schedule_1d(std::size_t k, double c, double delta, double eps);
Schedule schedule_nd(std::size_t d, std::size_t k, double c, double delta, double eps);

/// Packing constant ceil(3^d / Vol_d(1)).
std::size_t kappa(std::size_t d);

double ball_volume(std::size_t d, double radius);

}  // namespace apxpat
