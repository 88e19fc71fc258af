#include "ospan/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ospan {

namespace {

std::size_t packed_index(std::size_t i, std::size_t j) {
  // requires i > j
  return i * (i - 1) / 2 + j;
}

void require_finite(std::span<const double> p) {
  for (double x : p) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite coordinate");
  }
}

}  // namespace

std::string_view to_string(Norm norm) { return norm == Norm::L1 ? "l1" : "l2"; }

Norm parse_norm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "l1") return Norm::L1;
  if (lower == "l2") return Norm::L2;
  throw std::invalid_argument("unknown norm '" + std::string(text) + "' (expected l1 or l2)");
}

double distance(std::span<const double> p, std::span<const double> q, Norm norm) {
  if (p.size() != q.size()) throw std::invalid_argument("dimension mismatch");
  require_finite(p);
  require_finite(q);
  if (norm == Norm::L1) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p[k] - q[k]);
    return s;
  }
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double diff = p[k] - q[k];
    s += diff * diff;
  }
  return std::sqrt(s);
}

// --- PointSequence ---------------------------------------------------------

PointSequence::PointSequence(std::size_t dim, Norm norm) : dim_(dim), norm_(norm) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
}

std::span<const double> PointSequence::operator[](std::size_t i) const {
  if (i >= size()) throw std::out_of_range("point index out of range");
  return {coords_.data() + i * dim_, dim_};
}

void PointSequence::append(std::span<const double> p) {
  if (p.size() != dim_) throw std::invalid_argument("dimension mismatch");
  require_finite(p);
  coords_.insert(coords_.end(), p.begin(), p.end());
}

double PointSequence::distance(std::size_t i, std::size_t j) const {
  return ospan::distance((*this)[i], (*this)[j], norm_);
}

// --- FiniteMetric ----------------------------------------------------------

FiniteMetric FiniteMetric::from_points(PointSequence points) {
  FiniteMetric m;
  m.n_ = points.size();
  m.points_.emplace(std::move(points));
  return m;
}

FiniteMetric FiniteMetric::from_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("distance matrix is not square");
  }
  FiniteMetric m;
  m.n_ = n;
  m.packed_.reserve(n * (n - (n > 0 ? 1 : 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) throw std::invalid_argument("distance matrix has a nonzero diagonal entry");
    for (std::size_t j = 0; j < i; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("non-finite distance");
      if (a < 0.0) throw std::invalid_argument("negative distance");
      if (a != b) throw std::invalid_argument("distance matrix is not symmetric");
      m.packed_.push_back(a);
    }
  }
  return m;
}

std::size_t FiniteMetric::size() const noexcept { return n_; }

double FiniteMetric::operator()(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw std::out_of_range("metric index out of range");
  if (i == j) return 0.0;
  if (points_) return points_->distance(i, j);
  return i > j ? packed_[packed_index(i, j)] : packed_[packed_index(j, i)];
}

void FiniteMetric::append(std::span<const double> distances_to_previous) {
  if (points_) throw std::logic_error("cannot append a distance row to a point-backed metric");
  if (distances_to_previous.size() != n_) {
    throw std::invalid_argument("expected " + std::to_string(n_) + " distances, got " +
                                std::to_string(distances_to_previous.size()));
  }
  for (double d : distances_to_previous) {
    if (!std::isfinite(d)) throw std::invalid_argument("non-finite distance");
    if (d < 0.0) throw std::invalid_argument("negative distance");
  }
  packed_.insert(packed_.end(), distances_to_previous.begin(), distances_to_previous.end());
  ++n_;
}

std::vector<double> FiniteMetric::row_prefix(std::size_t i) const {
  std::vector<double> row(i);
  for (std::size_t j = 0; j < i; ++j) row[j] = (*this)(i, j);
  return row;
}

double FiniteMetric::max_distance() const {
  double best = 0.0;
  if (!points_) {
    for (double d : packed_) best = std::max(best, d);
    return best;
  }
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) best = std::max(best, (*this)(i, j));
  return best;
}

std::vector<std::vector<double>> FiniteMetric::to_matrix() const {
  std::vector<std::vector<double>> rows(n_, std::vector<double>(n_, 0.0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j) rows[i][j] = rows[j][i] = (*this)(i, j);
  return rows;
}

// --- validation ------------------------------------------------------------

std::string_view to_string(MetricViolation::Kind kind) {
  switch (kind) {
    case MetricViolation::Kind::NonFinite: return "non-finite";
    case MetricViolation::Kind::Negative: return "negative";
    case MetricViolation::Kind::NonzeroDiagonal: return "nonzero-diagonal";
    case MetricViolation::Kind::Asymmetry: return "asymmetry";
    case MetricViolation::Kind::Triangle: return "triangle";
    case MetricViolation::Kind::Ultrametric: return "ultrametric";
    case MetricViolation::Kind::Ragged: return "ragged";
  }
  return "unknown";
}

namespace {

template <typename Dist>
void collect_triangle(std::size_t n, Dist&& d, double tol, std::vector<MetricViolation>& out) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double direct = d(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double excess = direct - (d(i, j) + d(j, k));
        if (excess > tol) out.push_back({MetricViolation::Kind::Triangle, i, j, k, excess});
      }
    }
  }
}

}  // namespace

std::vector<MetricViolation> validate_matrix(const std::vector<std::vector<double>>& rows, double rel_tol) {
  std::vector<MetricViolation> out;
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) out.push_back({MetricViolation::Kind::Ragged, i, i, i, 0.0});
  }
  if (!out.empty()) return out;

  double scale = 0.0;
  bool numeric_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = rows[i][j];
      if (!std::isfinite(d)) {
        out.push_back({MetricViolation::Kind::NonFinite, i, j, i, 0.0});
        numeric_ok = false;
        continue;
      }
      if (d < 0.0) {
        out.push_back({MetricViolation::Kind::Negative, i, j, i, -d});
        numeric_ok = false;
      }
      scale = std::max(scale, std::abs(d));
    }
  }
  const double tol = rel_tol * scale;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isfinite(rows[i][i]) && rows[i][i] != 0.0)
      out.push_back({MetricViolation::Kind::NonzeroDiagonal, i, i, i, std::abs(rows[i][i])});
    for (std::size_t j = i + 1; j < n; ++j) {
      const double diff = std::abs(rows[i][j] - rows[j][i]);
      if (std::isfinite(diff) && diff > tol) out.push_back({MetricViolation::Kind::Asymmetry, i, j, i, diff});
    }
  }
  if (numeric_ok) {
    collect_triangle(n, [&](std::size_t a, std::size_t b) { return rows[a][b]; }, tol, out);
  }
  return out;
}

std::vector<MetricViolation> validate_metric(const FiniteMetric& m, double rel_tol) {
  std::vector<MetricViolation> out;
  const double tol = rel_tol * m.max_distance();
  collect_triangle(m.size(), [&](std::size_t a, std::size_t b) { return m(a, b); }, tol, out);
  return out;
}

std::vector<MetricViolation> validate_ultrametric(const FiniteMetric& m, double rel_tol) {
  std::vector<MetricViolation> out;
  const std::size_t n = m.size();
  const double tol = rel_tol * m.max_distance();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const double direct = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double excess = direct - std::max(m(i, j), m(j, k));
        if (excess > tol) out.push_back({MetricViolation::Kind::Ultrametric, i, j, k, excess});
      }
    }
  }
  return out;
}

namespace {

template <typename Combine>
std::optional<MetricViolation> check_row(const FiniteMetric& m, std::span<const double> row, double rel_tol,
                                         MetricViolation::Kind kind, Combine&& combine) {
  const std::size_t n = m.size();
  if (row.size() != n) throw std::invalid_argument("row length does not match metric size");
  double scale = 0.0;
  for (double d : row) {
    if (!std::isfinite(d)) return MetricViolation{MetricViolation::Kind::NonFinite, n, n, n, 0.0};
    if (d < 0.0) return MetricViolation{MetricViolation::Kind::Negative, n, n, n, -d};
    scale = std::max(scale, d);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) scale = std::max(scale, m(j, k));
  const double tol = rel_tol * scale;
  // New point is index n.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const double djk = m(j, k);
      if (double e = djk - combine(row[j], row[k]); e > tol) return MetricViolation{kind, j, n, k, e};
      if (double e = row[j] - combine(row[k], djk); e > tol) return MetricViolation{kind, n, k, j, e};
      if (double e = row[k] - combine(row[j], djk); e > tol) return MetricViolation{kind, n, j, k, e};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<MetricViolation> check_new_row(const FiniteMetric& m, std::span<const double> row, double rel_tol) {
  return check_row(m, row, rel_tol, MetricViolation::Kind::Triangle, [](double a, double b) { return a + b; });
}

std::optional<MetricViolation> check_new_row_ultrametric(const FiniteMetric& m, std::span<const double> row,
                                                         double rel_tol) {
  return check_row(m, row, rel_tol, MetricViolation::Kind::Ultrametric,
                   [](double a, double b) { return std::max(a, b); });
}

}  // namespace ospan
