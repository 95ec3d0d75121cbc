#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apxpat/bounds.hpp"
#include "apxpat/geometry.hpp"
#include "apxpat/verifier.hpp"

namespace apxpat {

enum class StepAction { Success, Descend };

/// One subdivision step. `count` is the number of points inside `box`;
/// `cell_count_sum` is the total over all (k*s)^d cells (equal to `count`
/// by construction, recorded so the partition can be audited).
struct SearchStep {
  AxisBox box;
  std::size_t count = 0;
  std::size_t cell_count_sum = 0;
  std::size_t occupied_cells = 0;
  StepAction action = StepAction::Descend;
  /// Success: system offset t (one entry per axis).
  std::vector<std::size_t> offset;
  /// Success: first vertices of the system cells (the exact grid nodes).
  std::vector<Point> anchors;
  /// Success: chosen input indices, one per system cell.
  std::vector<std::size_t> chosen;
  /// Descend: multi-index of the chosen child cell.
  std::vector<std::size_t> cell;
};

struct SearchTrace {
  std::vector<SearchStep> steps;
};

struct SearchWarnings {
  /// Box side below the guarantee threshold Z0; the search ran best-effort.
  bool below_threshold = false;
  /// Fewer than c * L^d input points; the density hypothesis does not hold.
  bool below_density = false;
};

struct SearchOutcome {
  bool found = false;
  std::vector<std::size_t> subset;
  std::vector<Point> anchors;
  std::optional<Homothety> homothety;
  std::optional<VerifyResult> verify;
  SearchTrace trace;
  Schedule schedule;
  SearchWarnings warnings;
  /// The box the search started from.
  AxisBox domain;
  /// Grid size searched (k for grids; the resolution K for patterns).
  std::size_t grid_k = 0;
  double grid_eps = 0.0;
};

/// How the initial box is chosen. With neither field set the tight bounding
/// cube of the input is used; `length` alone stretches it to at least that
/// side; `low` and `length` together fix the box exactly.
struct SearchOptions {
  std::optional<Point> low;
  std::optional<double> length;
  /// Per-axis cap on the pattern grid resolution.
  std::size_t resolution_cap = 10000;
};

/// Smallest t in [0, s) whose system {t, t+s, ..., t+(k-1)s} is fully occupied.
std::optional<std::size_t> scan_systems_1d(std::span<const std::size_t> counts, std::size_t k,
                                           std::size_t s);

SearchOutcome search_ap(const PointSet& s, std::size_t k, double eps, double delta, double c,
                        const SearchOptions& options = {});

SearchOutcome search_grid(const PointSet& s, std::size_t k, double eps, double delta, double c,
                          const SearchOptions& options = {});

struct GridResolution {
  std::size_t k = 0;
  double eps = 0.0;
};

GridResolution pattern_grid_resolution(const Pattern& p, double eps, std::size_t d);

SearchOutcome search_pattern(const PointSet& s, const Pattern& p, double eps, double delta,
                             double c, const SearchOptions& options = {});

}  // namespace apxpat
