#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ospan/graph.hpp"
#include "ospan/metric.hpp"

namespace ospan {

/// Relative tolerance used for every stretch-bound comparison.
inline constexpr double kStretchRelTol = 1e-9;

/// True iff measured <= bound * (1 + kStretchRelTol).
bool within_stretch_bound(double measured, double bound);

struct MstResult {
  double weight = 0.0;
  std::vector<Edge> edges;
};

/// Exact MST of the complete graph on m (dense Prim, O(n^2)).
MstResult mst(const FiniteMetric& m);
inline double mst_weight(const FiniteMetric& m) { return mst(m).weight; }

struct StretchReport {
  /// +infinity when disconnected; 1 when no pair has positive distance.
  double max_stretch = 1.0;
  /// Pair attaining max_stretch (u < v); absent if no pair has positive distance.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  bool connected = true;
};

/// Maximum over pairs i < j with m(i, j) > 0 of d_G(i, j) / m(i, j), from
/// all-source Dijkstra. g may cover a prefix of m (g.vertex_count() <= m.size());
/// only that prefix is checked.
StretchReport max_stretch(const SpannerGraph& g, const FiniteMetric& m);

/// Same report restricted to pairs involving the last vertex of g. In an
/// append-only graph the older pairs can only get shorter, so checking this
/// after each arrival is equivalent to checking every prefix in full.
StretchReport newest_vertex_stretch(const SpannerGraph& g, const FiniteMetric& m);

struct BaselineRatio {
  std::string name;
  double weight = 0.0;
  double ratio = 0.0;  // spanner weight / baseline weight
};

struct MetricsReport {
  std::size_t n = 0;
  double total_weight = 0.0;
  double mst_weight = 0.0;
  double lightness = 1.0;
  std::size_t edge_count = 0;
  double sparsity = 1.0;
  std::vector<BaselineRatio> baselines;
};

/// Weight, lightness (weight / MST), sparsity (|E| / (n - 1)) and per-baseline
/// ratios. Throws std::invalid_argument if g is disconnected.
///
/// Degenerate cases: with n < 2, or an MST of weight zero, lightness is 1 when
/// the spanner weight is also zero; sparsity is 1 when n < 2.
MetricsReport metrics_report(const SpannerGraph& g, const FiniteMetric& m,
                             const std::vector<std::pair<std::string, double>>& baselines = {});

}  // namespace ospan
