#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ospan {

/// A partition of the directions of R^d into cones, each with a unit axis.
/// Every direction assigned to a cone lies within aperture/2 of that cone's
/// axis.
///
/// d = 1: the two rays. d = 2: k equal sectors, k = ceil(2*pi / aperture).
/// d >= 3: the cells of a uniform m^(d-1) grid on each face of the cube
/// [-1, 1]^d, with m chosen so that every cell, seen from the origin, fits in
/// a cone of half-angle aperture/2 around its center direction.
class ConeCover {
 public:
  static ConeCover build(std::size_t dim, double aperture);

  std::size_t dim() const noexcept { return dim_; }
  double aperture() const noexcept { return aperture_; }
  std::size_t size() const noexcept { return count_; }

  std::span<const double> axis(std::size_t i) const;

  /// Index of the cone containing a nonzero direction. Boundary directions go
  /// to the lower sector (d = 2) or lower grid cell (d >= 3).
  std::size_t cone_of(std::span<const double> direction) const;

  /// Grid cells per face edge (d >= 3), sectors (d = 2), 1 otherwise.
  std::size_t resolution() const noexcept { return resolution_; }

 private:
  ConeCover(std::size_t dim, double aperture) : dim_(dim), aperture_(aperture) {}

  std::size_t dim_;
  double aperture_;
  std::size_t resolution_ = 1;
  std::size_t count_ = 0;
  std::vector<double> axes_;
};

inline ConeCover build_cone_cover(std::size_t dim, double aperture) { return ConeCover::build(dim, aperture); }

/// Smallest k > 8 with 1 / (1 - 2 sin(pi / k)) <= 1 + eps (ordered Yao
/// spanning-ratio bound in the plane).
std::size_t planar_sector_count(double eps);

/// Cone aperture for which the ordered Yao graph is a (1 + eps)-spanner:
/// 2*pi / planar_sector_count(eps) for d = 2, eps / (2 sqrt(d)) otherwise.
double aperture_for_epsilon(std::size_t dim, double eps);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(std::span<const double> a, std::span<const double> b);

}  // namespace ospan
