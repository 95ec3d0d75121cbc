#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "apxpat/geometry.hpp"

namespace apxpat::oracle {

inline constexpr std::uint64_t kApBudget = 10'000'000;
inline constexpr std::uint64_t kHomotheticBudget = 10'000'000;
inline constexpr std::uint64_t kCollinearBudget = 1'000'000;

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All k-subsets accepted by verify_ap. Each tuple lists input indices in
/// increasing coordinate order; tuples are sorted lexicographically by
/// coordinate rank, so the result does not depend on input order.
std::vector<std::vector<std::size_t>> enumerate_aps(const PointSet& s, std::size_t k, double eps,
                                                    std::uint64_t budget = kApBudget);

struct HomotheticMatch {
  /// Input indices, ascending.
  std::vector<std::size_t> subset;
  /// assignment[i] is the pattern index matched with subset[i]; the
  /// lexicographically smallest accepted one is kept.
  std::vector<std::size_t> assignment;
};

std::vector<HomotheticMatch> enumerate_homothetic(const PointSet& s, const Pattern& p, double eps,
                                                  std::uint64_t budget = kHomotheticBudget);

/// True iff some k-subset passes verify_collinear(eps). Exhaustive with
/// hereditary pruning (every subset of an eps-collinear set is one).
bool exists_collinear(const PointSet& s, std::size_t k, double eps,
                      std::uint64_t budget = kCollinearBudget);

/// Dense grid search over witness parameters, independent of the verifier's
/// solvers. Returns the smallest max-relative deviation found (an upper
/// bound on the optimum that converges under refinement).
struct GridSearchResult {
  double deviation = 0.0;
  Point anchor;
  double scale = 0.0;
};

/// q sorted increasing; pattern {0, 1, ..., k-1}. Anchor grid and log-scale
/// grid of `resolution` points each, followed by `refinements` zooms around
/// the incumbent.
GridSearchResult grid_search_ap(std::span<const double> q, std::size_t resolution = 400,
                                std::size_t refinements = 5);

/// Same for a general pattern with caller-supplied assignment. The anchor
/// grid has `anchor_resolution` points per axis.
GridSearchResult grid_search_homothetic(const PointSet& q, const Pattern& p,
                                        std::span<const std::size_t> assignment,
                                        std::size_t scale_resolution = 200,
                                        std::size_t anchor_resolution = 60,
                                        std::size_t refinements = 8);

}  // namespace apxpat::oracle
