#include "ospan/quadtree_yao.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ospan {

GridCellKey GridCellKey::of(std::span<const double> p, int level) {
  GridCellKey key{level, {}};
  key.coords.reserve(p.size());
  for (double x : p) {
    const double scaled = std::floor(std::ldexp(x, level));
    if (!(std::abs(scaled) < 9.0e18)) throw std::overflow_error("grid coordinate out of range at this level");
    key.coords.push_back(static_cast<std::int64_t>(scaled));
  }
  return key;
}

std::size_t Alg1::KeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (std::int64_t c : k) {
    h ^= std::hash<std::int64_t>{}(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Alg1::Alg1(std::size_t dim, double eps, double cap_constant)
    : dim_(dim),
      eps_(eps),
      cap_constant_(cap_constant),
      cones_(ConeCover::build(dim, aperture_for_epsilon(dim, eps))),
      points_(dim, Norm::L2) {
  if (!(cap_constant > 0.0)) throw std::invalid_argument("cap constant must be positive");
  best_.assign(cones_.size(), {std::numeric_limits<double>::infinity(), 0});
}

double Alg1::cap(int level) const {
  return cap_constant_ * std::ldexp(1.0, -level) * std::sqrt(static_cast<double>(dim_)) / eps_;
}

std::pair<int, int> Alg1::level_range() const {
  if (levels_.empty()) return {0, -1};
  return {levels_.begin()->first, levels_.rbegin()->first};
}

std::span<const std::size_t> Alg1::representatives(int level) const {
  auto it = levels_.find(level);
  if (it == levels_.end()) return {};
  return it->second.order;
}

int Alg1::coarse_level() const {
  if (max_abs_coord_ == 0.0) return 0;
  int level = static_cast<int>(std::floor(-std::log2(max_abs_coord_)));
  while (std::ldexp(max_abs_coord_, level) >= 1.0) --level;
  while (std::ldexp(max_abs_coord_, level + 1) < 1.0) ++level;
  return level;
}

// Largest level whose cap strictly exceeds w.
int Alg1::finest_useful_level(double w) const {
  const double base = cap_constant_ * std::sqrt(static_cast<double>(dim_)) / eps_;
  int level = static_cast<int>(std::floor(std::log2(base / w)));
  while (cap(level) <= w) --level;
  while (cap(level + 1) > w) ++level;
  return level;
}

int Alg1::tag_level(int processed_level, bool unbounded, double w) const {
  if (!unbounded || w < cap(processed_level)) return processed_level;
  return std::min(processed_level, finest_useful_level(w));
}

Alg1::LevelState& Alg1::materialize(int level, std::size_t upto) {
  auto [it, inserted] = levels_.try_emplace(level);
  LevelState& state = it->second;
  if (inserted) {
    for (std::size_t i = 0; i < upto; ++i) {
      auto key = GridCellKey::of(points_[i], level).coords;
      if (state.rep_of_cell.try_emplace(std::move(key), i).second) state.order.push_back(i);
    }
  }
  return state;
}

void Alg1::connect(std::size_t idx, int level, bool unbounded, const LevelState& state,
                   std::vector<LeveledEdge>& out) {
  const auto p = points_[idx];
  const double limit = unbounded ? std::numeric_limits<double>::infinity() : cap(level);
  std::vector<double> dir(dim_);
  for (std::size_t q : state.order) {
    const auto qc = points_[q];
    const double d = distance(p, qc, Norm::L2);
    if (!(d < limit)) continue;
    for (std::size_t k = 0; k < dim_; ++k) dir[k] = qc[k] - p[k];
    const std::size_t c = cones_.cone_of(dir);
    auto& slot = best_[c];
    if (slot.first == std::numeric_limits<double>::infinity()) touched_.push_back(c);
    if (d < slot.first) slot = {d, q};
  }
  std::sort(touched_.begin(), touched_.end());
  for (std::size_t c : touched_) {
    const auto [d, q] = best_[c];
    const LeveledEdge e{tag_level(level, unbounded, d), idx, q, d};
    out.push_back(e);
    graph_.add_edge(idx, q, d);
    best_[c] = {std::numeric_limits<double>::infinity(), 0};
  }
  touched_.clear();
}

std::vector<LeveledEdge> Alg1::insert(std::span<const double> p) {
  if (p.size() != dim_) throw std::invalid_argument("dimension mismatch");
  const std::size_t idx = points_.size();
  points_.append(p);
  graph_.add_vertex();
  for (double x : p) max_abs_coord_ = std::max(max_abs_coord_, std::abs(x));

  std::vector<LeveledEdge> out;
  if (idx == 0) return out;

  double nearest = std::numeric_limits<double>::infinity();
  std::size_t nearest_idx = 0;
  for (std::size_t j = 0; j < idx; ++j) {
    const double d = points_.distance(idx, j);
    if (d < nearest) {
      nearest = d;
      nearest_idx = j;
    }
  }

  if (nearest == 0.0) {
    // Shares every cell with an earlier point, so it is never a representative.
    const LeveledEdge e{LeveledEdge::kCoincident, idx, nearest_idx, 0.0};
    out.push_back(e);
    graph_.add_edge(idx, nearest_idx, 0.0);
  } else {
    const int lo = coarse_level();
    const int hi = std::max(lo, finest_useful_level(nearest));
    for (int level = lo; level <= hi; ++level) materialize(level, idx);

    for (auto& [level, state] : levels_) {
      auto key = GridCellKey::of(p, level).coords;
      if (state.rep_of_cell.contains(key)) continue;
      if (level <= hi) connect(idx, level, level == lo, state, out);
      state.rep_of_cell.emplace(std::move(key), idx);
      state.order.push_back(idx);
    }
  }

  for (const LeveledEdge& e : out) {
    log_.push_back(e);
    log_steps_.push_back(idx);
  }
  return out;
}

}  // namespace ospan
