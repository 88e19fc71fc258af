#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ospan/cones.hpp"
#include "ospan/graph.hpp"
#include "ospan/metric.hpp"

namespace ospan {

/// Cell of the absolute dyadic grid: level l has side 2^-l (l may be
/// negative) and the cell of p is floor(p * 2^l) componentwise.
struct GridCellKey {
  int level = 0;
  std::vector<std::int64_t> coords;

  static GridCellKey of(std::span<const double> p, int level);
  friend bool operator==(const GridCellKey&, const GridCellKey&) = default;
};

/// An edge together with the grid level whose Yao step produced it.
struct LeveledEdge {
  /// Level tag for the zero-weight edge that attaches a point coinciding with
  /// an earlier one (such a point is never a cell representative).
  static constexpr int kCoincident = INT_MAX;

  int level = 0;
  std::size_t u = 0;  // the arriving point
  std::size_t v = 0;  // the earlier representative
  double w = 0.0;
};

inline constexpr double kDefaultCapConstant = 24.0;

/// Online Euclidean (1+eps)-spanner over a dynamic dyadic grid.
///
/// Every nonempty grid cell keeps the first point that entered it as its
/// representative. When a point becomes the representative of a cell at level
/// l it is joined, for each cone, to the closest earlier representative of
/// level l inside that cone, provided the edge is shorter than
/// cap_constant * 2^-l * sqrt(d) / eps. The spanner is the union of all levels.
///
/// Only finitely many levels are materialized. Coarse side: once every point
/// has |coordinate| * 2^l < 1 the cell partition no longer changes, so the
/// coarsest materialized level stands for all coarser ones and its cap is
/// unbounded. Fine side: an arrival p is processed down to the last level
/// whose cap exceeds the distance from p to its nearest earlier point; deeper
/// levels cannot yield an edge for p. Deeper levels materialized later are
/// rebuilt from the arrival order, which reproduces the representative each
/// cell would have had.
class Alg1 {
 public:
  Alg1(std::size_t dim, double eps, double cap_constant = kDefaultCapConstant);

  /// Inserts the next point; returns every level edge produced (the same
  /// geometric pair may appear at several levels).
  std::vector<LeveledEdge> insert(std::span<const double> p);

  std::size_t dim() const noexcept { return dim_; }
  double eps() const noexcept { return eps_; }
  double cap_constant() const noexcept { return cap_constant_; }
  const ConeCover& cones() const noexcept { return cones_; }
  const PointSequence& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Deduplicated union over levels; first addition of a pair wins.
  const SpannerGraph& spanner() const noexcept { return graph_; }
  /// All level edges in production order.
  const std::vector<LeveledEdge>& log() const noexcept { return log_; }
  /// Arrival step (point index) of each log entry.
  const std::vector<std::size_t>& log_steps() const noexcept { return log_steps_; }

  /// Weight cap of level l.
  double cap(int level) const;

  /// Materialized level range [coarsest, finest]; empty pair if none.
  std::pair<int, int> level_range() const;
  /// Representatives of a materialized level in assignment order.
  std::span<const std::size_t> representatives(int level) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
  };
  struct LevelState {
    std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> rep_of_cell;
    std::vector<std::size_t> order;
  };

  LevelState& materialize(int level, std::size_t upto);
  int coarse_level() const;
  int finest_useful_level(double nearest) const;
  int tag_level(int processed_level, bool unbounded, double w) const;
  void connect(std::size_t idx, int level, bool unbounded, const LevelState& state,
               std::vector<LeveledEdge>& out);

  std::size_t dim_;
  double eps_;
  double cap_constant_;
  ConeCover cones_;
  PointSequence points_;
  SpannerGraph graph_;
  std::map<int, LevelState> levels_;
  double max_abs_coord_ = 0.0;
  std::vector<LeveledEdge> log_;
  std::vector<std::size_t> log_steps_;

  // scratch for per-cone closest search
  std::vector<std::pair<double, std::size_t>> best_;
  std::vector<std::size_t> touched_;
};

}  // namespace ospan
