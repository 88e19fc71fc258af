#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/metric.hpp"

namespace ospan {

/// Rooted tree with labeled internal nodes whose leaves are the points of an
/// ultrametric: d(x, y) = label(lca(x, y)). Leaves carry label 0.
class HstTree {
 public:
  static constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

  struct Node {
    double label = 0.0;
    std::size_t parent = kNoParent;
    std::vector<std::size_t> children;
    std::optional<std::size_t> point;  // set for leaves
    std::size_t depth = 0;
  };

  /// Pass kNoParent to create the root (only once).
  std::size_t add_internal(std::size_t parent, double label);
  std::size_t add_leaf(std::size_t parent, std::size_t point);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t root() const noexcept { return 0; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept { return leaf_of_point_.size(); }
  const Node& node(std::size_t i) const { return nodes_.at(i); }

  /// Label of the lowest common ancestor of the two points' leaves.
  double distance(std::size_t a, std::size_t b) const;
  FiniteMetric to_metric() const;

  /// Throws std::invalid_argument unless labels strictly decrease from parent
  /// to internal child, internal labels are positive, internal nodes have
  /// children and leaf points are exactly 0..n-1.
  void validate() const;

  /// label(v) >= alpha * label(u) for every internal v and internal child u,
  /// up to 1e-12 relative.
  bool is_alpha_hst(double alpha) const;

  /// Same tree with point p renamed to new_index[p].
  HstTree relabeled(std::span<const std::size_t> new_index) const;

 private:
  std::size_t add_node(std::size_t parent, double label, std::optional<std::size_t> point);
  std::size_t leaf_node(std::size_t point) const;

  std::vector<Node> nodes_;
  std::vector<std::size_t> leaf_of_point_;  // point -> node, kNoParent if unset
};

/// Random HST fixture, deterministic for the seed. Root label 1; at most
/// `depth` internal levels; each internal child label is at most
/// parent / min_ratio (strictly smaller when min_ratio == 1). Point indices
/// are a random permutation of the leaves. depth = 1 gives the uniform metric.
HstTree random_hst(std::size_t n, std::size_t depth, std::uint64_t seed, double min_ratio = 1.0);

/// alpha^ceil(log_alpha d) with exact-power correction; 0 stays 0.
double round_up_to_power(double d, double alpha);

/// Rounds every distance of an ultrametric up to the next power of alpha.
/// Throws MetricViolationError if m is not an ultrametric.
FiniteMetric alpha_round(const FiniteMetric& m, double alpha);

/// kappa = floor(log_{1+eps} (1/eps)).
std::size_t multiscale_kappa(double eps);

/// Smallest (1+eps)^copy * eps^-j >= d over integers j; 0 stays 0.
double round_up_to_scale_grid(double d, double eps, std::size_t copy);

/// Index of the earliest point among those nearest to the arriving point.
/// Distances within 1e-12 relative of the minimum count as tied.
std::size_t nearest_first_arrival(std::span<const double> distances);

/// Online ultrametric spanner: each arrival is joined to the earliest-arrived
/// of its nearest earlier points. Always a spanning tree; on an ultrametric it
/// is an MST.
class HstSpanner {
 public:
  explicit HstSpanner(bool check_ultrametric = true) : check_(check_ultrametric) {}

  /// Returns the new edge (none for the first point). Throws
  /// MetricViolationError with a witness triple if the row breaks the
  /// ultrametric inequality.
  std::optional<Edge> insert(std::span<const double> distances);
  /// Chooses the neighbor by `selection` but records the edge with `weights`.
  std::optional<Edge> insert(std::span<const double> selection, std::span<const double> weights);

  std::size_t size() const noexcept { return revealed_.size(); }
  const SpannerGraph& spanner() const noexcept { return graph_; }
  const FiniteMetric& revealed() const noexcept { return revealed_; }

 private:
  bool check_;
  FiniteMetric revealed_;
  SpannerGraph graph_;
};

/// HstSpanner run on the alpha-rounded distances, edges carrying the
/// original weights. Stretch <= 2 alpha^2 / (alpha - 1), weight <= alpha * MST.
class AlphaRoundedSpanner {
 public:
  explicit AlphaRoundedSpanner(double alpha, bool check_ultrametric = true);

  std::optional<Edge> insert(std::span<const double> distances);

  double alpha() const noexcept { return alpha_; }
  double stretch_bound() const noexcept { return 2.0 * alpha_ * alpha_ / (alpha_ - 1.0); }
  std::size_t size() const noexcept { return original_.size(); }
  const SpannerGraph& spanner() const noexcept { return inner_.spanner(); }
  const FiniteMetric& revealed() const noexcept { return original_; }
  const FiniteMetric& rounded() const noexcept { return inner_.revealed(); }

 private:
  double alpha_;
  bool check_;
  FiniteMetric original_;
  HstSpanner inner_{false};
};

/// Union of kappa + 1 HstSpanner runs, copy i on distances rounded up to the
/// grid (1+eps)^i * eps^-j. Stretch <= 2 (1 + 3 eps) for eps in (0, 1/2).
class MultiScaleSpanner {
 public:
  explicit MultiScaleSpanner(double eps, bool check_ultrametric = true);

  /// New union edges (deduplicated across copies), original weights.
  std::vector<Edge> insert(std::span<const double> distances);

  double eps() const noexcept { return eps_; }
  std::size_t kappa() const noexcept { return copies_.size() - 1; }
  double stretch_bound() const noexcept { return 2.0 * (1.0 + 3.0 * eps_); }
  /// ((1+eps)^(kappa+1) - 1) / eps: weight bound as a multiple of the MST.
  double weight_factor() const;

  std::size_t size() const noexcept { return original_.size(); }
  const SpannerGraph& spanner() const noexcept { return graph_; }
  const HstSpanner& copy(std::size_t i) const { return copies_.at(i); }
  const FiniteMetric& revealed() const noexcept { return original_; }

 private:
  double eps_;
  bool check_;
  FiniteMetric original_;
  std::vector<HstSpanner> copies_;
  SpannerGraph graph_;
};

}  // namespace ospan
