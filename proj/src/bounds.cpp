#include "apxpat/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "apxpat/error.hpp"

namespace apxpat {
namespace {

void check_dim(std::size_t d) {
  if (d < 1 || d > kMaxBoundsDim) {
    throw Error(ErrorKind::Domain, "dimension must lie in [1, " +
                                       std::to_string(kMaxBoundsDim) + "], got " +
                                       std::to_string(d));
  }
}

void check_params(std::size_t k, double c, double delta, double eps) {
  if (k < 2) throw Error(ErrorKind::Domain, "k must be at least 2");
  if (!(c > 0.0) || !std::isfinite(c)) throw Error(ErrorKind::Domain, "density c must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::Domain, "separation delta must be positive");
  }
  if (!(eps > 0.0) || eps > 1.0 / 3.0) {
    throw Error(ErrorKind::Domain, "eps must lie in (0, 1/3]");
  }
}

// Vol_d(1) split by parity: pi^{d/2}/(d/2)! or 2(2pi)^{(d-1)/2}/(1*3*...*d).
double unit_ball_volume(std::size_t d) {
  constexpr double pi = std::numbers::pi;
  if (d % 2 == 0) {
    double fact = 1.0;
    for (std::size_t i = 2; i <= d / 2; ++i) fact *= static_cast<double>(i);
    return std::pow(pi, static_cast<double>(d) / 2.0) / fact;
  }
  double odd_fact = 1.0;
  for (std::size_t i = 3; i <= d; i += 2) odd_fact *= static_cast<double>(i);
  return 2.0 * std::pow(2.0 * pi, static_cast<double>(d - 1) / 2.0) / odd_fact;
}

// Smallest integer j >= 1 with base * ratio^j >= target. The logarithm
// quotient gives the answer up to one ulp-level misround, which is fixed by
// stepping down when the previous integer already satisfies the inequality.
std::size_t min_depth(double base, double ratio, double target) {
  const double q = std::log(target / base) / std::log(ratio);
  if (!(q > 1.0)) return 1;
  auto j = static_cast<std::size_t>(std::ceil(q));
  if (j > 1 && base * std::pow(ratio, static_cast<double>(j - 1)) >= target * (1.0 - 1e-12)) {
    --j;
  }
  return j;
}

// ceil(x) that treats values within 1e-12 relative of an integer as that integer.
std::size_t robust_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(x));
}

}  // namespace

Schedule schedule_1d(std::size_t k, double c, double delta, double eps) {
  check_params(k, c, delta, eps);
  Schedule s;
  s.d = 1;
  s.k = k;
  s.c = c;
  s.delta = delta;
  s.eps = eps;
  s.stride = robust_ceil(1.0 / eps);
  s.ratio = static_cast<double>(k) / static_cast<double>(k - 1);
  s.kappa = 2;
  s.depth = min_depth(c * delta, s.ratio, 2.0);
  s.threshold = 2.0 * delta *
                std::pow(static_cast<double>(k * s.stride), static_cast<double>(s.depth));
  return s;
}

Schedule schedule_nd(std::size_t d, std::size_t k, double c, double delta, double eps) {
  check_dim(d);
  check_params(k, c, delta, eps);
  Schedule s;
  s.d = d;
  s.k = k;
  s.c = c;
  s.delta = delta;
  s.eps = eps;
  s.stride = robust_ceil(std::sqrt(static_cast<double>(d)) / eps);
  const double cells = std::pow(static_cast<double>(k), static_cast<double>(d));
  s.ratio = cells / (cells - 1.0);
  s.kappa = kappa(d);
  // Density enters as c * delta^d (the packing inequality), not c * delta.
  s.depth = min_depth(c * std::pow(delta, static_cast<double>(d)), s.ratio,
                      static_cast<double>(s.kappa));
  s.threshold = 2.0 * delta *
                std::pow(static_cast<double>(k * s.stride), static_cast<double>(s.depth));
  return s;
}

std::size_t kappa(std::size_t d) {
  check_dim(d);
  return static_cast<std::size_t>(std::ceil(std::pow(3.0, static_cast<double>(d)) /
                                            unit_ball_volume(d)));
}

double ball_volume(std::size_t d, double radius) {
  check_dim(d);
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::Domain, "radius must be non-negative");
  }
  return unit_ball_volume(d) * std::pow(radius, static_cast<double>(d));
}

}  // namespace apxpat
