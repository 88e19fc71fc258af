#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/metric.hpp"

namespace ospan {

// --- unweighted graphs -----------------------------------------------------

class SimpleGraph {
 public:
  explicit SimpleGraph(std::size_t n = 0) : adj_(n) {}

  static SimpleGraph from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  /// Cubic graph from LCF notation: Hamiltonian cycle plus chords i -> i + shift.
  static SimpleGraph lcf(std::size_t n, const std::vector<int>& shifts);
  static SimpleGraph complete(std::size_t n);
  static SimpleGraph cycle(std::size_t n);
  static SimpleGraph petersen();  // 10 vertices, girth 5
  static SimpleGraph heawood();   // 14 vertices, girth 6
  static SimpleGraph mcgee();     // 24 vertices, girth 7
  /// "petersen", "heawood" or "mcgee"; throws std::invalid_argument otherwise.
  static SimpleGraph named(std::string_view name);

  void add_edge(std::size_t u, std::size_t v);
  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adj_.at(v); }

  /// Hop distances from s; unreachable vertices get SIZE_MAX.
  std::vector<std::size_t> bfs(std::size_t s) const;
  /// Length of the shortest cycle, 0 for a forest.
  std::size_t girth() const;

 private:
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t edge_count_ = 0;
};

/// d(u, v) = min(hops(u, v), 2k - 1). Throws std::invalid_argument on a
/// disconnected graph or k == 0.
FiniteMetric truncated_girth_metric(const SimpleGraph& g, std::size_t k);

struct StarInstance {
  FiniteMetric metric;  // original points first, the center last
  std::size_t center;
  double radius;  // (2k - 1) / 2
};

/// Appends a center at distance (2k - 1) / 2 from every point. Throws
/// MetricViolationError if that breaks the triangle inequality.
StarInstance star_append(const FiniteMetric& m, std::size_t k);

/// Star on the center of a StarInstance.
SpannerGraph star_network(std::size_t n_points, double radius);

// --- L1 lattice ------------------------------------------------------------

struct ScheduledSequence {
  PointSequence points{1, Norm::L1};
  std::vector<std::size_t> step;  // step of each point, nondecreasing
  std::size_t core_steps = 0;     // steps 0 .. core_steps-1 follow the two-phase schedule
  std::vector<long> step_norm;    // L1 norm presented at each step
  std::size_t dim = 0;
  std::size_t side = 0;  // m: coordinates range over 0 .. m-1
  long total_norm = 0;   // ceil(1/eps)
};

/// Lattice [0, 1/(eps d))^d presented by L1 norm: step 2i carries norm i,
/// step 2i+1 norm ceil(1/eps) - i for 0 <= i < 1/(2 eps); norms missed by
/// that schedule follow in ascending order. Lexicographic within a step.
ScheduledSequence l1_lattice_sequence(std::size_t d, double eps);

struct OrderedPair {
  std::size_t x;  // in step 2i
  std::size_t y;  // in step 2i + 1
  std::size_t batch;  // i
};

std::vector<OrderedPair> ordered_pairs(const ScheduledSequence& seq);

struct ViaPathReport {
  bool holds = true;
  double direct = 0.0;
  double min_detour = 0.0;  // over eligible z; +inf if none
  std::vector<std::size_t> violators;
};

/// Checks ||x - z|| + ||z - y|| > (1 + eps) ||x - y|| for every z != x, y
/// presented at step <= 2i + 1.
ViaPathReport verify_no_via_path(const OrderedPair& pair, const ScheduledSequence& seq, double eps);

/// Unit-distance grid graph on the lattice of l1_lattice_sequence(d, eps),
/// indexed like that sequence.
SpannerGraph manhattan_network(std::size_t d, double eps);
SpannerGraph manhattan_network(const ScheduledSequence& seq);

// --- +-1 hypercube ---------------------------------------------------------

inline constexpr std::size_t kHypercubeAttemptBudget = 1'000'000;

/// target_size random +-1 vectors whose pairwise Hamming distances all lie in
/// [(1-eps) d/2, (1+eps) d/2], followed by the origin. L2 norm. Throws
/// InfeasibleError when the attempt budget runs out.
PointSequence hypercube_pm1_sequence(std::size_t d, double eps, std::size_t target_size, std::uint64_t seed,
                                     std::size_t attempt_budget = kHypercubeAttemptBudget);

}  // namespace ospan
