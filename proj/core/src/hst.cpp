#include "ospan/hst.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ospan/errors.hpp"
#include "ospan/random.hpp"

namespace ospan {

// --- HstTree ---------------------------------------------------------------

std::size_t HstTree::add_node(std::size_t parent, double label, std::optional<std::size_t> point) {
  if (parent == kNoParent) {
    if (!nodes_.empty()) throw std::invalid_argument("tree already has a root");
  } else {
    if (parent >= nodes_.size()) throw std::invalid_argument("parent out of range");
    if (nodes_[parent].point) throw std::invalid_argument("a leaf cannot have children");
  }
  Node node;
  node.label = label;
  node.parent = parent;
  node.point = point;
  node.depth = parent == kNoParent ? 0 : nodes_[parent].depth + 1;
  const std::size_t id = nodes_.size();
  nodes_.push_back(std::move(node));
  if (parent != kNoParent) nodes_[parent].children.push_back(id);
  if (point) {
    if (*point >= leaf_of_point_.size()) leaf_of_point_.resize(*point + 1, kNoParent);
    if (leaf_of_point_[*point] != kNoParent) throw std::invalid_argument("duplicate leaf point index");
    leaf_of_point_[*point] = id;
  }
  return id;
}

std::size_t HstTree::add_internal(std::size_t parent, double label) {
  if (!(label > 0.0) || !std::isfinite(label)) throw std::invalid_argument("internal labels must be positive");
  return add_node(parent, label, std::nullopt);
}

std::size_t HstTree::add_leaf(std::size_t parent, std::size_t point) { return add_node(parent, 0.0, point); }

std::size_t HstTree::leaf_node(std::size_t point) const {
  if (point >= leaf_of_point_.size() || leaf_of_point_[point] == kNoParent)
    throw std::out_of_range("no leaf for point index");
  return leaf_of_point_[point];
}

double HstTree::distance(std::size_t a, std::size_t b) const {
  std::size_t x = leaf_node(a);
  std::size_t y = leaf_node(b);
  while (x != y) {
    if (nodes_[x].depth >= nodes_[y].depth) {
      x = nodes_[x].parent;
    } else {
      y = nodes_[y].parent;
    }
  }
  return nodes_[x].label;
}

FiniteMetric HstTree::to_metric() const {
  validate();
  FiniteMetric m;
  for (std::size_t i = 0; i < leaf_count(); ++i) {
    std::vector<double> row(i);
    for (std::size_t j = 0; j < i; ++j) row[j] = distance(i, j);
    m.append(row);
  }
  return m;
}

void HstTree::validate() const {
  for (std::size_t p = 0; p < leaf_of_point_.size(); ++p) {
    if (leaf_of_point_[p] == kNoParent) throw std::invalid_argument("leaf point indices are not contiguous");
  }
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (n.point) {
      if (n.label != 0.0) throw std::invalid_argument("leaf labels must be 0");
      continue;
    }
    if (n.children.empty()) throw std::invalid_argument("internal node without children");
    if (!(n.label > 0.0)) throw std::invalid_argument("internal labels must be positive");
    for (std::size_t c : n.children) {
      const Node& child = nodes_[c];
      if (!child.point && !(child.label < n.label))
        throw std::invalid_argument("labels must strictly decrease from parent to child");
    }
  }
}

bool HstTree::is_alpha_hst(double alpha) const {
  for (const Node& n : nodes_) {
    if (n.point) continue;
    for (std::size_t c : n.children) {
      const Node& child = nodes_[c];
      if (!child.point && n.label < alpha * child.label * (1.0 - 1e-12)) return false;
    }
  }
  return true;
}

HstTree HstTree::relabeled(std::span<const std::size_t> new_index) const {
  if (new_index.size() != leaf_count()) throw std::invalid_argument("relabel size mismatch");
  HstTree out = *this;
  out.leaf_of_point_.assign(leaf_count(), kNoParent);
  for (Node& n : out.nodes_) {
    if (!n.point) continue;
    const std::size_t p = new_index[*n.point];
    if (p >= leaf_count() || out.leaf_of_point_[p] != kNoParent) throw std::invalid_argument("not a permutation");
    out.leaf_of_point_[p] = static_cast<std::size_t>(&n - out.nodes_.data());
    n.point = p;
  }
  return out;
}

// --- generator -------------------------------------------------------------

namespace {

void grow(HstTree& tree, std::size_t parent, double label, std::span<const std::size_t> leaves, std::size_t level,
          std::size_t depth, double min_ratio, Rng& rng) {
  const std::size_t node = tree.add_internal(parent, label);
  if (level + 1 >= depth) {
    for (std::size_t p : leaves) tree.add_leaf(node, p);
    return;
  }
  const std::size_t max_groups = std::min<std::size_t>(4, leaves.size());
  const std::size_t groups = 2 + uniform_index(rng, max_groups - 1);
  std::vector<std::size_t> cuts{0, leaves.size()};
  while (cuts.size() < groups + 1) {
    const std::size_t c = 1 + uniform_index(rng, leaves.size() - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
    auto part = leaves.subspan(cuts[g], cuts[g + 1] - cuts[g]);
    if (part.size() == 1) {
      tree.add_leaf(node, part.front());
      continue;
    }
    // Sometimes hit the ratio exactly so alpha-HST fixtures are tight.
    double shrink;
    if (min_ratio > 1.0 && unit_uniform(rng) < 0.3) {
      shrink = 1.0;
    } else {
      shrink = uniform_real(rng, 0.2, 0.95);
    }
    grow(tree, node, label * shrink / min_ratio, part, level + 1, depth, min_ratio, rng);
  }
}

}  // namespace

HstTree random_hst(std::size_t n, std::size_t depth, std::uint64_t seed, double min_ratio) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  if (!(min_ratio >= 1.0)) throw std::invalid_argument("min_ratio must be >= 1");
  HstTree tree;
  if (n == 1) {
    tree.add_leaf(HstTree::kNoParent, 0);
    return tree;
  }
  Rng rng(seed);
  std::vector<std::size_t> points(n);
  std::iota(points.begin(), points.end(), 0);
  shuffle(std::span<std::size_t>(points), rng);
  grow(tree, HstTree::kNoParent, 1.0, points, 0, depth, min_ratio, rng);
  return tree;
}

// --- rounding --------------------------------------------------------------

double round_up_to_power(double d, double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (d <= 0.0) return 0.0;
  auto power = [&](long e) { return std::pow(alpha, static_cast<double>(e)); };
  long e = std::lround(std::ceil(std::log(d) / std::log(alpha)));
  while (power(e) < d) ++e;
  while (power(e - 1) >= d) --e;
  return power(e);
}

namespace {

std::string describe(const MetricViolation& v) {
  std::ostringstream msg;
  msg << to_string(v.kind) << " violation at (" << v.i << ", " << v.j << ", " << v.k << "), excess " << v.excess;
  return msg.str();
}

}  // namespace

FiniteMetric alpha_round(const FiniteMetric& m, double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (auto v = validate_ultrametric(m); !v.empty()) throw MetricViolationError("not an ultrametric: " + describe(v.front()));
  FiniteMetric out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::vector<double> row = m.row_prefix(i);
    for (double& d : row) d = round_up_to_power(d, alpha);
    out.append(row);
  }
  return out;
}

std::size_t multiscale_kappa(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  const double target = 1.0 / eps;
  auto k = static_cast<long>(std::floor(std::log(target) / std::log1p(eps)));
  while (std::pow(1.0 + eps, static_cast<double>(k + 1)) <= target) ++k;
  while (k > 0 && std::pow(1.0 + eps, static_cast<double>(k)) > target) --k;
  return static_cast<std::size_t>(std::max(0L, k));
}

double round_up_to_scale_grid(double d, double eps, std::size_t copy) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (d <= 0.0) return 0.0;
  const double base = static_cast<double>(copy) * std::log1p(eps);
  const double step = -std::log(eps);
  const double scale = std::pow(1.0 + eps, static_cast<double>(copy));
  auto value = [&](long j) { return scale * std::pow(eps, -static_cast<double>(j)); };
  long j = std::lround(std::ceil((std::log(d) - base) / step));
  while (value(j) < d) ++j;
  while (value(j - 1) >= d) --j;
  return value(j);
}

std::size_t nearest_first_arrival(std::span<const double> distances) {
  if (distances.empty()) throw std::invalid_argument("no earlier points");
  const double best = *std::min_element(distances.begin(), distances.end());
  const double limit = best * (1.0 + 1e-12);
  for (std::size_t j = 0; j < distances.size(); ++j) {
    if (distances[j] <= limit) return j;
  }
  return 0;  // unreachable
}

// --- online spanners -------------------------------------------------------

std::optional<Edge> HstSpanner::insert(std::span<const double> distances) { return insert(distances, distances); }

std::optional<Edge> HstSpanner::insert(std::span<const double> selection, std::span<const double> weights) {
  const std::size_t idx = revealed_.size();
  if (selection.size() != idx || weights.size() != idx)
    throw std::invalid_argument("expected " + std::to_string(idx) + " distances");
  if (check_) {
    if (auto v = check_new_row_ultrametric(revealed_, selection))
      throw MetricViolationError("arrival " + std::to_string(idx) + " breaks the ultrametric: " + describe(*v));
  }
  revealed_.append(selection);
  graph_.add_vertex();
  if (idx == 0) return std::nullopt;
  const std::size_t u = nearest_first_arrival(selection);
  graph_.add_edge(idx, u, weights[u]);
  return Edge{idx, u, weights[u]};
}

AlphaRoundedSpanner::AlphaRoundedSpanner(double alpha, bool check_ultrametric)
    : alpha_(alpha), check_(check_ultrametric) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be a finite value > 1");
}

std::optional<Edge> AlphaRoundedSpanner::insert(std::span<const double> distances) {
  if (distances.size() != original_.size())
    throw std::invalid_argument("expected " + std::to_string(original_.size()) + " distances");
  if (check_) {
    if (auto v = check_new_row_ultrametric(original_, distances))
      throw MetricViolationError("arrival " + std::to_string(original_.size()) +
                                 " breaks the ultrametric: " + describe(*v));
  }
  std::vector<double> rounded(distances.begin(), distances.end());
  for (double& d : rounded) d = round_up_to_power(d, alpha_);
  auto edge = inner_.insert(rounded, distances);
  original_.append(distances);
  return edge;
}

MultiScaleSpanner::MultiScaleSpanner(double eps, bool check_ultrametric) : eps_(eps), check_(check_ultrametric) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  copies_.assign(multiscale_kappa(eps) + 1, HstSpanner(false));
}

double MultiScaleSpanner::weight_factor() const {
  return (std::pow(1.0 + eps_, static_cast<double>(kappa() + 1)) - 1.0) / eps_;
}

std::vector<Edge> MultiScaleSpanner::insert(std::span<const double> distances) {
  const std::size_t idx = original_.size();
  if (distances.size() != idx) throw std::invalid_argument("expected " + std::to_string(idx) + " distances");
  if (check_) {
    if (auto v = check_new_row_ultrametric(original_, distances))
      throw MetricViolationError("arrival " + std::to_string(idx) + " breaks the ultrametric: " + describe(*v));
  }
  original_.append(distances);
  graph_.add_vertex();
  std::vector<Edge> added;
  std::vector<double> rounded(distances.size());
  for (std::size_t i = 0; i < copies_.size(); ++i) {
    for (std::size_t j = 0; j < distances.size(); ++j) rounded[j] = round_up_to_scale_grid(distances[j], eps_, i);
    if (auto e = copies_[i].insert(rounded, distances)) {
      if (graph_.add_edge(e->u, e->v, e->w)) added.push_back(*e);
    }
  }
  return added;
}

}  // namespace ospan
