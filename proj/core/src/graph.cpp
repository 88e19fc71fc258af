#include "ospan/graph.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace ospan {

SpannerGraph::SpannerGraph(std::size_t vertices) : adjacency_(vertices) {}

std::size_t SpannerGraph::add_vertex() {
  adjacency_.emplace_back();
  return adjacency_.size() - 1;
}

void SpannerGraph::ensure_vertices(std::size_t n) {
  if (n > adjacency_.size()) adjacency_.resize(n);
}

std::uint64_t SpannerGraph::key(std::size_t u, std::size_t v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

bool SpannerGraph::add_edge(std::size_t u, std::size_t v, double w) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u >= vertex_count() || v >= vertex_count()) throw std::invalid_argument("edge endpoint out of range");
  if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("edge weight must be finite and nonnegative");
  if (!pairs_.insert(key(u, v)).second) return false;
  edges_.push_back({u, v, w});
  adjacency_[u].push_back({v, w});
  adjacency_[v].push_back({u, w});
  total_weight_ += w;
  return true;
}

bool SpannerGraph::has_edge(std::size_t u, std::size_t v) const { return pairs_.contains(key(u, v)); }

namespace {

using QueueItem = std::pair<double, std::size_t>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

std::vector<double> shortest_path_distances(const SpannerGraph& g, std::size_t source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw std::out_of_range("source out of range");
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  MinQueue queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    for (const Neighbor& nb : g.neighbors(u)) {
      const double nd = d + nb.w;
      if (nd < dist[nb.to]) {
        dist[nb.to] = nd;
        queue.push({nd, nb.to});
      }
    }
  }
  return dist;
}

std::optional<double> bounded_distance(const SpannerGraph& g, std::size_t s, std::size_t t, double cutoff) {
  const std::size_t n = g.vertex_count();
  if (s >= n || t >= n) throw std::out_of_range("vertex out of range");
  if (s == t) return 0.0;
  if (cutoff < 0.0) return std::nullopt;
  // Sparse bookkeeping: searches are local when the cutoff is small.
  std::vector<std::pair<std::size_t, double>> touched;
  thread_local std::vector<double> dist;
  if (dist.size() < n) dist.assign(n, std::numeric_limits<double>::infinity());
  auto relax = [&](std::size_t v, double d) {
    if (dist[v] == std::numeric_limits<double>::infinity()) touched.emplace_back(v, d);
    dist[v] = d;
  };
  MinQueue queue;
  relax(s, 0.0);
  queue.push({0.0, s});
  std::optional<double> result;
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u == t) {
      result = d;
      break;
    }
    for (const Neighbor& nb : g.neighbors(u)) {
      const double nd = d + nb.w;
      if (nd <= cutoff && nd < dist[nb.to]) {
        relax(nb.to, nd);
        queue.push({nd, nb.to});
      }
    }
  }
  for (const auto& [v, unused] : touched) dist[v] = std::numeric_limits<double>::infinity();
  return result;
}

bool is_connected(const SpannerGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : g.neighbors(u)) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        ++count;
        stack.push_back(nb.to);
      }
    }
  }
  return count == n;
}

}  // namespace ospan
