#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/metric.hpp"

namespace ospan {

/// One examined candidate pair of the ordered greedy rule.
struct GreedyAuditEntry {
  std::size_t arriving = 0;
  std::size_t earlier = 0;
  double w = 0.0;
  /// Spanner distance at examination time if it was within t * w.
  std::optional<double> spanner_distance;
  bool added = false;
};

/// Online ordered greedy t-spanner for an arbitrary metric revealed point by
/// point.
///
/// For each arrival the pairs to all earlier points are examined by ascending
/// distance (ties: smaller earlier index first) and a pair is added iff the
/// current spanner distance is strictly greater than t times the metric
/// distance. Edges added earlier in the same arrival count.
class OrderedGreedy {
 public:
  struct Options {
    /// Verify the triangle inequalities introduced by each new row (O(n^2)
    /// per arrival). Disable for metrics valid by construction.
    bool check_metric = true;
    /// Also log examined pairs that were not added (O(n^2) memory).
    bool audit_skipped = false;
  };

  explicit OrderedGreedy(double t) : OrderedGreedy(t, Options{}) {}
  OrderedGreedy(double t, Options options);

  /// distances_to_previous.size() must equal size(). Throws
  /// MetricViolationError (state unchanged) if the row breaks the metric.
  std::vector<Edge> insert(std::span<const double> distances_to_previous);

  /// Exact d_H(u, v) if <= cutoff, otherwise nullopt ("exceeds cutoff").
  std::optional<double> distance_query(std::size_t u, std::size_t v, double cutoff) const;

  double t() const noexcept { return t_; }
  std::size_t size() const noexcept { return revealed_.size(); }
  const SpannerGraph& spanner() const noexcept { return graph_; }
  const FiniteMetric& revealed() const noexcept { return revealed_; }
  /// Added pairs (and skipped ones if Options::audit_skipped) in examination order.
  const std::vector<GreedyAuditEntry>& audit() const noexcept { return audit_; }

 private:
  double t_;
  Options options_;
  FiniteMetric revealed_;
  SpannerGraph graph_;
  std::vector<GreedyAuditEntry> audit_;
};

/// Runs the ordered greedy over m in index order.
SpannerGraph ordered_greedy(const FiniteMetric& m, double t);

}  // namespace ospan
