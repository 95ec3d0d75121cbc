#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "apxpat/geometry.hpp"
#include "apxpat/verifier.hpp"

namespace apxpat {

/// Buckets r = ceil(pi/eps) + 1 over [-pi/2, pi/2) for the direction of
/// every segment, oriented left to right.
class AngleColoring {
 public:
  AngleColoring(const PointSet& s, double eps);

  std::size_t buckets() const noexcept { return r_; }
  std::size_t size() const noexcept { return n_; }
  std::size_t bucket(std::size_t i, std::size_t j) const;
  double width() const noexcept;

 private:
  std::size_t pair_slot(std::size_t i, std::size_t j) const;

  std::size_t n_;
  std::size_t r_;
  std::vector<std::uint32_t> colors_;
};

std::size_t bucket_count(double eps);

/// Bucket of segment pq (oriented so x increases) among r half-closed
/// subintervals of [-pi/2, pi/2).
std::size_t angle_bucket(const Point& p, const Point& q, std::size_t r);

enum class CollinearStatus {
  Found,
  /// Every colour class was searched to completion without a k-clique.
  Exhausted,
  /// Some colour class hit the node budget and the greedy fallback failed.
  BudgetExceeded,
};

struct CollinearOptions {
  std::uint64_t node_budget = 1'000'000;
  /// Coordinate frames tried before giving up (each a further rotation).
  std::size_t max_frames = 8;
};

struct CollinearSearch {
  CollinearStatus status = CollinearStatus::Exhausted;
  std::vector<std::size_t> subset;
  std::size_t bucket = 0;
  /// Number of 1/phi-radian rotations applied to the input frame.
  std::size_t rotations = 0;
  bool from_greedy = false;
  CollinearCheck certificate;
  std::uint64_t nodes = 0;
};

/// Finds k points whose pairwise segments share one direction bucket
/// (planar inputs only); every returned subset is certified with
/// verify_collinear.
CollinearSearch find_collinear(const PointSet& s, std::size_t k, double eps,
                               const CollinearOptions& options = {});

}  // namespace apxpat
