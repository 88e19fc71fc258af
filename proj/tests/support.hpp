#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ospan/metric.hpp"
#include "ospan/random.hpp"

namespace ospan::testing {

inline PointSequence random_points(std::size_t n, std::size_t dim, std::uint64_t seed, Norm norm = Norm::L2) {
  Rng rng(seed);
  PointSequence pts(dim, norm);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : p) x = unit_uniform(rng);
    pts.append(p);
  }
  return pts;
}

inline FiniteMetric packed(const FiniteMetric& m) {
  FiniteMetric out;
  for (std::size_t i = 0; i < m.size(); ++i) out.append(m.row_prefix(i));
  return out;
}

inline FiniteMetric uniform_metric(std::size_t n) {
  FiniteMetric m;
  for (std::size_t i = 0; i < n; ++i) m.append(std::vector<double>(i, 1.0));
  return m;
}

inline FiniteMetric line_metric(const std::vector<double>& xs) {
  PointSequence pts(1, Norm::L1);
  for (double x : xs) pts.append(std::vector<double>{x});
  return packed(FiniteMetric::from_points(pts));
}

}  // namespace ospan::testing
