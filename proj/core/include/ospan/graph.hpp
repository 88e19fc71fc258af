#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

namespace ospan {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  std::size_t to;
  double w;
};

/// Append-only weighted graph over a growing vertex set. Edges are kept in
/// insertion order; an unordered pair is stored at most once.
class SpannerGraph {
 public:
  explicit SpannerGraph(std::size_t vertices = 0);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::size_t add_vertex();
  /// Grows the vertex set to n (never shrinks).
  void ensure_vertices(std::size_t n);

  /// Returns false (and changes nothing) if {u, v} is already present.
  /// Throws std::invalid_argument on self-loops, out-of-range endpoints or a
  /// negative / non-finite weight.
  bool add_edge(std::size_t u, std::size_t v, double w);
  bool has_edge(std::size_t u, std::size_t v) const;

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(std::size_t u) const { return adjacency_.at(u); }

  double total_weight() const noexcept { return total_weight_; }

 private:
  static std::uint64_t key(std::size_t u, std::size_t v);

  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> pairs_;
  double total_weight_ = 0.0;
};

/// Dijkstra from source; unreachable vertices get +infinity.
std::vector<double> shortest_path_distances(const SpannerGraph& g, std::size_t source);

/// Exact shortest-path distance from s to t if it is <= cutoff, otherwise
/// nullopt. The search never settles vertices farther than cutoff.
std::optional<double> bounded_distance(const SpannerGraph& g, std::size_t s, std::size_t t, double cutoff);

bool is_connected(const SpannerGraph& g);

}  // namespace ospan
