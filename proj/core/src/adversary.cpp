#include "ospan/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ospan/errors.hpp"
#include "ospan/random.hpp"

namespace ospan {

namespace {
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
constexpr double kTol = 1e-9;
}  // namespace

// --- SimpleGraph -----------------------------------------------------------

void SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size()) throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  if (std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end()) return;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
  ++edge_count_;
}

SimpleGraph SimpleGraph::from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  SimpleGraph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::lcf(std::size_t n, const std::vector<int>& shifts) {
  if (n < 3 || shifts.empty()) throw std::invalid_argument("bad LCF parameters");
  SimpleGraph g = cycle(n);
  const auto sn = static_cast<long>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long s = shifts[i % shifts.size()];
    const long j = ((static_cast<long>(i) + s) % sn + sn) % sn;
    g.add_edge(i, static_cast<std::size_t>(j));
  }
  return g;
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  SimpleGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

SimpleGraph SimpleGraph::cycle(std::size_t n) {
  if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices");
  SimpleGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

SimpleGraph SimpleGraph::petersen() {
  SimpleGraph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

SimpleGraph SimpleGraph::heawood() { return lcf(14, {5, -5}); }

SimpleGraph SimpleGraph::mcgee() { return lcf(24, {12, 7, -7}); }

SimpleGraph SimpleGraph::named(std::string_view name) {
  if (name == "petersen") return petersen();
  if (name == "heawood") return heawood();
  if (name == "mcgee") return mcgee();
  throw std::invalid_argument("unknown graph '" + std::string(name) + "' (expected petersen, heawood or mcgee)");
}

std::vector<std::size_t> SimpleGraph::bfs(std::size_t s) const {
  std::vector<std::size_t> dist(size(), kUnreached);
  std::queue<std::size_t> q;
  dist.at(s) = 0;
  q.push(s);
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t v : adj_[u]) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

std::size_t SimpleGraph::girth() const {
  std::size_t best = kUnreached;
  std::vector<std::size_t> dist(size());
  std::vector<std::size_t> parent(size());
  for (std::size_t s = 0; s < size(); ++s) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    std::queue<std::size_t> q;
    dist[s] = 0;
    parent[s] = kUnreached;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        if (dist[v] == kUnreached) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push(v);
        } else if (parent[u] != v) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
  }
  return best == kUnreached ? 0 : best;
}

FiniteMetric truncated_girth_metric(const SimpleGraph& g, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const double cap = static_cast<double>(2 * k - 1);
  std::vector<std::vector<std::size_t>> hops;
  hops.reserve(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    hops.push_back(g.bfs(s));
    for (std::size_t h : hops.back()) {
      if (h == kUnreached) throw std::invalid_argument("graph is disconnected");
    }
  }
  FiniteMetric m;
  std::vector<double> row;
  for (std::size_t i = 0; i < g.size(); ++i) {
    row.assign(i, 0.0);
    for (std::size_t j = 0; j < i; ++j) row[j] = std::min(static_cast<double>(hops[i][j]), cap);
    m.append(row);
  }
  return m;
}

StarInstance star_append(const FiniteMetric& m, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be positive");
  const double radius = (2.0 * static_cast<double>(k) - 1.0) / 2.0;
  const std::vector<double> row(m.size(), radius);
  if (auto v = check_new_row(m, row)) {
    std::ostringstream msg;
    msg << "star center at distance " << radius << " violates the triangle inequality at (" << v->i << ", "
        << v->j << ", " << v->k << ")";
    throw MetricViolationError(msg.str());
  }
  FiniteMetric out;
  for (std::size_t i = 0; i < m.size(); ++i) out.append(m.row_prefix(i));
  out.append(row);
  return StarInstance{std::move(out), m.size(), radius};
}

SpannerGraph star_network(std::size_t n_points, double radius) {
  SpannerGraph g(n_points + 1);
  for (std::size_t i = 0; i < n_points; ++i) g.add_edge(i, n_points, radius);
  return g;
}

// --- L1 lattice ------------------------------------------------------------

ScheduledSequence l1_lattice_sequence(std::size_t d, double eps) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (!(eps > 0.0 && eps * static_cast<double>(d) < 1.0)) throw std::invalid_argument("need 0 < eps < 1/d");
  const double extent = 1.0 / (eps * static_cast<double>(d));
  if (extent < 2.0 - kTol) throw std::invalid_argument("need 1/(eps d) >= 2");
  const auto side = static_cast<std::size_t>(std::ceil(extent - kTol));
  const auto total = static_cast<long>(std::ceil(1.0 / eps - kTol));
  const auto phases = static_cast<long>(std::ceil(0.5 / eps - kTol));

  std::size_t count = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (count > (std::size_t{1} << 26) / side) throw std::invalid_argument("lattice too large");
    count *= side;
  }

  // Lexicographic enumeration, bucketed by norm.
  std::map<long, std::vector<std::vector<double>>> by_norm;
  std::vector<std::size_t> digits(d, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<double> p(digits.begin(), digits.end());
    long norm = 0;
    for (std::size_t x : digits) norm += static_cast<long>(x);
    by_norm[norm].push_back(std::move(p));
    for (std::size_t k = d; k-- > 0;) {
      if (++digits[k] < side) break;
      digits[k] = 0;
    }
  }

  ScheduledSequence seq;
  seq.points = PointSequence(d, Norm::L1);
  seq.dim = d;
  seq.side = side;
  seq.total_norm = total;
  auto present = [&](long norm) {
    const std::size_t s = seq.step_norm.size();
    seq.step_norm.push_back(norm);
    auto it = by_norm.find(norm);
    if (it == by_norm.end()) return;
    for (const auto& p : it->second) {
      seq.points.append(p);
      seq.step.push_back(s);
    }
    by_norm.erase(it);
  };
  for (long i = 0; i < phases; ++i) {
    present(i);
    present(total - i);
  }
  seq.core_steps = seq.step_norm.size();
  while (!by_norm.empty()) present(by_norm.begin()->first);
  return seq;
}

std::vector<OrderedPair> ordered_pairs(const ScheduledSequence& seq) {
  std::vector<std::vector<std::size_t>> members(seq.core_steps);
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    if (seq.step[i] < seq.core_steps) members[seq.step[i]].push_back(i);
  }
  std::vector<OrderedPair> out;
  for (std::size_t b = 0; 2 * b + 1 < seq.core_steps; ++b) {
    for (std::size_t x : members[2 * b]) {
      const auto px = seq.points[x];
      for (std::size_t y : members[2 * b + 1]) {
        const auto py = seq.points[y];
        bool dominated = true;
        for (std::size_t k = 0; k < seq.dim && dominated; ++k) dominated = px[k] <= py[k];
        if (dominated) out.push_back({x, y, b});
      }
    }
  }
  return out;
}

ViaPathReport verify_no_via_path(const OrderedPair& pair, const ScheduledSequence& seq, double eps) {
  ViaPathReport report;
  report.direct = seq.points.distance(pair.x, pair.y);
  report.min_detour = std::numeric_limits<double>::infinity();
  const double limit = (1.0 + eps) * report.direct;
  const std::size_t last_step = 2 * pair.batch + 1;
  for (std::size_t z = 0; z < seq.points.size(); ++z) {
    if (z == pair.x || z == pair.y || seq.step[z] > last_step) continue;
    const double detour = seq.points.distance(pair.x, z) + seq.points.distance(z, pair.y);
    report.min_detour = std::min(report.min_detour, detour);
    if (!(detour > limit)) {
      report.holds = false;
      report.violators.push_back(z);
    }
  }
  return report;
}

SpannerGraph manhattan_network(const ScheduledSequence& seq) {
  std::map<std::vector<long>, std::size_t> index;
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const auto p = seq.points[i];
    std::vector<long> key(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) key[k] = std::lround(p[k]);
    index.emplace(std::move(key), i);
  }
  SpannerGraph g(seq.points.size());
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    const auto p = seq.points[i];
    std::vector<long> key(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) key[k] = std::lround(p[k]);
    for (std::size_t k = 0; k < key.size(); ++k) {
      ++key[k];
      if (auto it = index.find(key); it != index.end()) g.add_edge(i, it->second, 1.0);
      --key[k];
    }
  }
  return g;
}

SpannerGraph manhattan_network(std::size_t d, double eps) { return manhattan_network(l1_lattice_sequence(d, eps)); }

// --- +-1 hypercube ---------------------------------------------------------

PointSequence hypercube_pm1_sequence(std::size_t d, double eps, std::size_t target_size, std::uint64_t seed,
                                     std::size_t attempt_budget) {
  if (d == 0) throw std::invalid_argument("d must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double half = static_cast<double>(d) / 2.0;
  const double lo = (1.0 - eps) * half;
  const double hi = (1.0 + eps) * half;
  const std::size_t words = (d + 63) / 64;

  Rng rng(seed);
  std::vector<std::vector<std::uint64_t>> accepted;
  std::vector<std::uint64_t> cand(words);
  std::size_t attempts = 0;
  while (accepted.size() < target_size) {
    if (attempts++ >= attempt_budget) {
      std::ostringstream msg;
      msg << "hypercube sampling gave up after " << attempt_budget << " attempts with " << accepted.size() << " of "
          << target_size << " points; try d >= " << std::ceil(8.0 / (eps * eps)) << " or a smaller --size";
      throw InfeasibleError(msg.str());
    }
    for (std::size_t w = 0; w < words; ++w) cand[w] = rng();
    if (d % 64 != 0) cand.back() &= (std::uint64_t{1} << (d % 64)) - 1;
    bool ok = true;
    for (const auto& a : accepted) {
      std::size_t h = 0;
      for (std::size_t w = 0; w < words; ++w) h += static_cast<std::size_t>(std::popcount(a[w] ^ cand[w]));
      const auto hd = static_cast<double>(h);
      if (hd < lo || hd > hi) {
        ok = false;
        break;
      }
    }
    if (ok) accepted.push_back(cand);
  }

  PointSequence out(d, Norm::L2);
  std::vector<double> p(d);
  for (const auto& a : accepted) {
    for (std::size_t k = 0; k < d; ++k) p[k] = ((a[k / 64] >> (k % 64)) & 1U) ? 1.0 : -1.0;
    out.append(p);
  }
  std::fill(p.begin(), p.end(), 0.0);
  out.append(p);
  return out;
}

}  // namespace ospan
