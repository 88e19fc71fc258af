#include "ospan/ordered_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "ospan/errors.hpp"

namespace ospan {

OrderedGreedy::OrderedGreedy(double t, Options options) : t_(t), options_(options) {
  if (!(t > 1.0) || !std::isfinite(t)) throw std::invalid_argument("stretch target t must be a finite value > 1");
}

std::vector<Edge> OrderedGreedy::insert(std::span<const double> distances_to_previous) {
  const std::size_t idx = revealed_.size();
  if (distances_to_previous.size() != idx) {
    throw std::invalid_argument("expected " + std::to_string(idx) + " distances, got " +
                                std::to_string(distances_to_previous.size()));
  }
  if (options_.check_metric) {
    if (auto v = check_new_row(revealed_, distances_to_previous)) {
      std::ostringstream msg;
      msg << "arrival " << idx << " violates the metric (" << to_string(v->kind) << " at (" << v->i << ", " << v->j
          << ", " << v->k << "), excess " << v->excess << ")";
      throw MetricViolationError(msg.str());
    }
  }
  revealed_.append(distances_to_previous);
  graph_.add_vertex();

  std::vector<std::size_t> order(idx);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return distances_to_previous[a] < distances_to_previous[b];
  });

  // Every edge added during this arrival touches idx, so d_H(idx, .) can be
  // maintained incrementally: each new edge seeds a decrease-only Dijkstra.
  const double inf = std::numeric_limits<double>::infinity();
  const double horizon = idx == 0 ? 0.0 : t_ * distances_to_previous[order.back()];
  std::vector<double> dist(idx + 1, inf);
  dist[idx] = 0.0;
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  auto settle_from = [&](std::size_t v, double d) {
    if (!(d < dist[v]) || d > horizon) return;
    dist[v] = d;
    queue.push({d, v});
    while (!queue.empty()) {
      auto [du, u] = queue.top();
      queue.pop();
      if (du > dist[u]) continue;
      for (const Neighbor& nb : graph_.neighbors(u)) {
        const double nd = du + nb.w;
        if (nd <= horizon && nd < dist[nb.to]) {
          dist[nb.to] = nd;
          queue.push({nd, nb.to});
        }
      }
    }
  };

  std::vector<Edge> added;
  for (std::size_t j : order) {
    const double w = distances_to_previous[j];
    const std::optional<double> dh = dist[j] <= t_ * w ? std::optional<double>(dist[j]) : std::nullopt;
    GreedyAuditEntry entry{idx, j, w, dh, false};
    if (!dh) {
      graph_.add_edge(idx, j, w);
      added.push_back({idx, j, w});
      entry.added = true;
      settle_from(j, w);
    }
    if (entry.added || options_.audit_skipped) audit_.push_back(entry);
  }
  return added;
}

std::optional<double> OrderedGreedy::distance_query(std::size_t u, std::size_t v, double cutoff) const {
  if (u >= size() || v >= size()) throw std::out_of_range("vertex has not arrived");
  return bounded_distance(graph_, u, v, cutoff);
}

SpannerGraph ordered_greedy(const FiniteMetric& m, double t) {
  OrderedGreedy g(t, OrderedGreedy::Options{.check_metric = false});
  for (std::size_t i = 0; i < m.size(); ++i) g.insert(m.row_prefix(i));
  return g.spanner();
}

}  // namespace ospan
