#include "ospan/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ospan {

bool within_stretch_bound(double measured, double bound) {
  return measured <= bound * (1.0 + kStretchRelTol);
}

MstResult mst(const FiniteMetric& m) {
  const std::size_t n = m.size();
  MstResult result;
  if (n <= 1) return result;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, kInf);
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    }
    in_tree[u] = 1;
    if (step > 0) {
      result.edges.push_back({parent[u], u, best[u]});
      result.weight += best[u];
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = m(u, v);
      if (d < best[v]) {
        best[v] = d;
        parent[v] = u;
      }
    }
  }
  return result;
}

namespace {

struct LocalMax {
  double ratio = 1.0;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  bool connected = true;

  void offer(double r, std::size_t u, std::size_t v) {
    const bool better = !witness || r > ratio ||
                        (r == ratio && std::make_pair(u, v) < *witness);
    if (better) {
      ratio = r;
      witness = std::make_pair(u, v);
    }
  }
};

}  // namespace

StretchReport max_stretch(const SpannerGraph& g, const FiniteMetric& m) {
  const std::size_t n = g.vertex_count();
  if (n > m.size()) throw std::invalid_argument("spanner has more vertices than the metric");

  const unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                           static_cast<unsigned>(n / 64 + 1)));
  std::vector<LocalMax> partial(workers);
  std::atomic<std::size_t> next{0};

  auto work = [&](LocalMax& local) {
    for (std::size_t s = next++; s < n; s = next++) {
      const std::vector<double> dist = shortest_path_distances(g, s);
      for (std::size_t t = s + 1; t < n; ++t) {
        if (!std::isfinite(dist[t])) {
          local.connected = false;
          local.offer(std::numeric_limits<double>::infinity(), s, t);
          continue;
        }
        const double d = m(s, t);
        if (d > 0.0) local.offer(dist[t] / d, s, t);
      }
    }
  };

  if (workers == 1) {
    work(partial[0]);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back([&, w] { work(partial[w]); });
  }

  LocalMax merged;
  for (const LocalMax& p : partial) {
    merged.connected = merged.connected && p.connected;
    if (p.witness) merged.offer(p.ratio, p.witness->first, p.witness->second);
  }
  StretchReport report;
  report.connected = merged.connected;
  report.witness = merged.witness;
  report.max_stretch = merged.witness ? merged.ratio : 1.0;
  return report;
}

StretchReport newest_vertex_stretch(const SpannerGraph& g, const FiniteMetric& m) {
  const std::size_t n = g.vertex_count();
  if (n > m.size()) throw std::invalid_argument("spanner has more vertices than the metric");
  StretchReport report;
  if (n < 2) return report;
  const std::size_t v = n - 1;
  const std::vector<double> dist = shortest_path_distances(g, v);
  LocalMax local;
  for (std::size_t u = 0; u < v; ++u) {
    if (!std::isfinite(dist[u])) {
      local.connected = false;
      local.offer(std::numeric_limits<double>::infinity(), u, v);
      continue;
    }
    const double d = m(u, v);
    if (d > 0.0) local.offer(dist[u] / d, u, v);
  }
  report.connected = local.connected;
  report.witness = local.witness;
  report.max_stretch = local.witness ? local.ratio : 1.0;
  return report;
}

MetricsReport metrics_report(const SpannerGraph& g, const FiniteMetric& m,
                             const std::vector<std::pair<std::string, double>>& baselines) {
  if (g.vertex_count() != m.size()) throw std::invalid_argument("spanner and metric sizes differ");
  if (!is_connected(g)) throw std::invalid_argument("spanner is disconnected; lightness is undefined");

  MetricsReport r;
  r.n = m.size();
  r.total_weight = g.total_weight();
  r.mst_weight = mst_weight(m);
  r.edge_count = g.edge_count();
  if (r.mst_weight > 0.0) {
    r.lightness = r.total_weight / r.mst_weight;
  } else {
    r.lightness = r.total_weight > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  }
  r.sparsity = r.n >= 2 ? static_cast<double>(r.edge_count) / static_cast<double>(r.n - 1) : 1.0;
  for (const auto& [name, weight] : baselines) {
    const double ratio = weight > 0.0 ? r.total_weight / weight
                                      : (r.total_weight > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    r.baselines.push_back({name, weight, ratio});
  }
  return r;
}

}  // namespace ospan
