#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ospan {

enum class Norm { L1, L2 };

std::string_view to_string(Norm norm);
/// Accepts "l1"/"l2" (case-insensitive). Throws std::invalid_argument otherwise.
Norm parse_norm(std::string_view text);

/// L1 or L2 distance. Throws std::invalid_argument on dimension mismatch or
/// non-finite coordinates.
double distance(std::span<const double> p, std::span<const double> q, Norm norm);

/// Ordered, append-only list of points of a fixed dimension. Index order is
/// arrival order.
class PointSequence {
 public:
  PointSequence(std::size_t dim, Norm norm);

  std::size_t dim() const noexcept { return dim_; }
  Norm norm() const noexcept { return norm_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const;

  void append(std::span<const double> p);
  void append(std::initializer_list<double> p) { append(std::span<const double>(p.begin(), p.size())); }

  double distance(std::size_t i, std::size_t j) const;

 private:
  std::size_t dim_;
  Norm norm_;
  std::vector<double> coords_;
};

/// Symmetric, zero-diagonal distance oracle over n indexed points.
///
/// Either computed on demand from a PointSequence or backed by a packed
/// lower-triangular table that can grow one row at a time (the online
/// "reveal distances to all previous points" protocol).
class FiniteMetric {
 public:
  FiniteMetric() = default;

  static FiniteMetric from_points(PointSequence points);
  /// Full square matrix. Throws std::invalid_argument if ragged, asymmetric,
  /// negative, non-finite or with a nonzero diagonal; run validate_matrix()
  /// first to get the violations as data.
  static FiniteMetric from_matrix(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept;
  double operator()(std::size_t i, std::size_t j) const;

  /// Appends a point given its distances to every current point.
  /// Only valid for table-backed metrics.
  void append(std::span<const double> distances_to_previous);

  /// Distances from point i to points 0..i-1.
  std::vector<double> row_prefix(std::size_t i) const;

  const PointSequence* points() const noexcept { return points_ ? &*points_ : nullptr; }

  double max_distance() const;
  std::vector<std::vector<double>> to_matrix() const;

 private:
  std::optional<PointSequence> points_;
  std::vector<double> packed_;
  std::size_t n_ = 0;
};

struct MetricViolation {
  enum class Kind { NonFinite, Negative, NonzeroDiagonal, Asymmetry, Triangle, Ultrametric, Ragged };
  Kind kind;
  /// Triangle: dist(i,k) > dist(i,j) + dist(j,k). Ultrametric: dist(i,k) > max(dist(i,j), dist(j,k)).
  /// Pairwise kinds use (i, j) and leave k == i.
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  double excess = 0.0;
};

std::string_view to_string(MetricViolation::Kind kind);

inline constexpr double kMetricRelTol = 1e-9;

/// Every defect of a raw square matrix: ragged rows, non-finite or negative
/// entries, nonzero diagonal, asymmetric pairs, triangle violations.
std::vector<MetricViolation> validate_matrix(const std::vector<std::vector<double>>& rows,
                                             double rel_tol = kMetricRelTol);

/// Triangle violations of a metric (symmetry and diagonal hold by construction).
/// Tolerance is rel_tol times the largest distance. O(n^3).
std::vector<MetricViolation> validate_metric(const FiniteMetric& m, double rel_tol = kMetricRelTol);

/// Violations of d(i,k) <= max(d(i,j), d(j,k)). O(n^3).
std::vector<MetricViolation> validate_ultrametric(const FiniteMetric& m, double rel_tol = kMetricRelTol);

/// Checks the triangle inequalities that involve the point about to be
/// appended, given its distances to the current points. Returns the first
/// violation found. O(n^2).
std::optional<MetricViolation> check_new_row(const FiniteMetric& m, std::span<const double> row,
                                             double rel_tol = kMetricRelTol);

/// Same for the max-triangle (ultrametric) inequality.
std::optional<MetricViolation> check_new_row_ultrametric(const FiniteMetric& m, std::span<const double> row,
                                                         double rel_tol = kMetricRelTol);

}  // namespace ospan
