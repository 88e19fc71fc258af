#include "ospan/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ospan {

namespace {

constexpr std::size_t kMaxCones = 20'000'000;

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > kMaxCones / std::max<std::size_t>(base, 1)) throw std::invalid_argument("cone cover too large (more than 2e7 cones); lower the dimension or raise eps");
    r *= base;
  }
  return r;
}

}  // namespace

ConeCover ConeCover::build(std::size_t dim, double aperture) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  if (!(aperture > 0.0 && aperture < std::numbers::pi)) throw std::invalid_argument("aperture must lie in (0, pi)");

  ConeCover c(dim, aperture);
  if (dim == 1) {
    c.count_ = 2;
    c.axes_ = {1.0, -1.0};
    return c;
  }
  if (dim == 2) {
    const auto k = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / aperture - 1e-9));
    c.resolution_ = k;
    c.count_ = k;
    c.axes_.reserve(2 * k);
    for (std::size_t i = 0; i < k; ++i) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
      c.axes_.push_back(std::cos(phi));
      c.axes_.push_back(std::sin(phi));
    }
    return c;
  }

  // A face cell of side h is within chord h*sqrt(d-1)/2 of its center after
  // radial projection (1-Lipschitz outside the unit ball); that chord must
  // subtend at most aperture/2.
  const double max_side = 4.0 * std::sin(aperture / 4.0) / std::sqrt(static_cast<double>(dim - 1));
  const auto m = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 / max_side)));
  const std::size_t per_face = checked_pow(m, dim - 1);
  c.resolution_ = m;
  c.count_ = 2 * dim * per_face;
  c.axes_.resize(c.count_ * dim);
  const double side = 2.0 / static_cast<double>(m);
  std::vector<double> v(dim);
  for (std::size_t face = 0; face < 2 * dim; ++face) {
    const std::size_t a = face / 2;
    const double sign = face % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t cell = 0; cell < per_face; ++cell) {
      std::size_t rest = cell;
      double norm2 = 1.0;
      for (std::size_t k = 0; k < dim; ++k) {
        if (k == a) {
          v[k] = sign;
          continue;
        }
        const std::size_t ck = rest % m;
        rest /= m;
        v[k] = -1.0 + (static_cast<double>(ck) + 0.5) * side;
        norm2 += v[k] * v[k];
      }
      const double inv = 1.0 / std::sqrt(norm2);
      double* out = c.axes_.data() + (face * per_face + cell) * dim;
      for (std::size_t k = 0; k < dim; ++k) out[k] = v[k] * inv;
    }
  }
  return c;
}

std::span<const double> ConeCover::axis(std::size_t i) const {
  if (i >= count_) throw std::out_of_range("cone index out of range");
  return {axes_.data() + i * dim_, dim_};
}

std::size_t ConeCover::cone_of(std::span<const double> direction) const {
  if (direction.size() != dim_) throw std::invalid_argument("dimension mismatch");
  if (dim_ == 1) return direction[0] >= 0.0 ? 0 : 1;
  if (dim_ == 2) {
    double phi = std::atan2(direction[1], direction[0]);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    const double width = 2.0 * std::numbers::pi / static_cast<double>(count_);
    const auto idx = static_cast<std::size_t>(std::max(0.0, std::ceil(phi / width - 0.5)));
    return idx % count_;
  }
  std::size_t a = 0;
  for (std::size_t k = 1; k < dim_; ++k) {
    if (std::abs(direction[k]) > std::abs(direction[a])) a = k;
  }
  const double lead = std::abs(direction[a]);
  const std::size_t face = 2 * a + (direction[a] < 0.0 ? 1 : 0);
  const std::size_t m = resolution_;
  std::size_t cell = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dim_; ++k) {
    if (k == a) continue;
    const double x = direction[k] / lead;
    const auto ck = std::min(m - 1, static_cast<std::size_t>(std::max(0.0, std::floor((x + 1.0) * 0.5 *
                                                                                          static_cast<double>(m)))));
    cell += ck * stride;
    stride *= m;
  }
  return face * stride + cell;
}

std::size_t planar_sector_count(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  for (std::size_t k = 9;; ++k) {
    const double ratio = 1.0 / (1.0 - 2.0 * std::sin(std::numbers::pi / static_cast<double>(k)));
    if (ratio <= 1.0 + eps) return k;
    if (k > 100'000'000) throw std::invalid_argument("eps too small");
  }
}

double aperture_for_epsilon(std::size_t dim, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  if (dim == 2) return 2.0 * std::numbers::pi / static_cast<double>(planar_sector_count(eps));
  return eps / (2.0 * std::sqrt(static_cast<double>(dim)));
}

double angle_between(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  const double c = std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
  return std::acos(c);
}

}  // namespace ospan
