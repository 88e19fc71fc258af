#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ospan/cones.hpp"
#include "ospan/random.hpp"

namespace ospan {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_direction(Rng& rng, std::size_t dim) {
  // Box-Muller gaussian coordinates give a uniform direction.
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      const double u1 = 1.0 - unit_uniform(rng), u2 = unit_uniform(rng);
      x = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
      norm += x * x;
    }
  } while (norm == 0.0);
  return v;
}

TEST(ConeCover, LineHasTwoRays) {
  for (double theta : {0.1, 1.0, 3.0}) {
    const auto c = ConeCover::build(1, theta);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c.axis(c.cone_of(std::vector<double>{2.5}))[0], 1.0);
    EXPECT_EQ(c.axis(c.cone_of(std::vector<double>{-0.1}))[0], -1.0);
  }
}

TEST(ConeCover, QuadrantsInThePlane) {
  const auto c = ConeCover::build(2, kPi / 2);
  ASSERT_EQ(c.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double a = angle_between(c.axis(i), c.axis(j));
      EXPECT_TRUE(std::abs(a - kPi / 2) < 1e-12 || std::abs(a - kPi) < 1e-12);
    }
}

TEST(ConeCover, RejectsBadAperture) {
  EXPECT_THROW(ConeCover::build(2, 0.0), std::invalid_argument);
  EXPECT_THROW(ConeCover::build(3, kPi), std::invalid_argument);
  EXPECT_THROW(ConeCover::build(0, 1.0), std::invalid_argument);
}

class CoverageBySampling : public ::testing::TestWithParam<std::pair<std::size_t, double>> {};

TEST_P(CoverageBySampling, EveryDirectionNearItsAxis) {
  const auto [dim, theta] = GetParam();
  const auto c = ConeCover::build(dim, theta);
  Rng rng(dim * 1000 + 17);
  const int samples = dim == 3 ? 100000 : 20000;
  for (int s = 0; s < samples; ++s) {
    const auto v = random_direction(rng, dim);
    const std::size_t i = c.cone_of(v);
    ASSERT_LT(i, c.size());
    ASSERT_LE(angle_between(v, c.axis(i)), theta / 2 + 1e-12) << "sample " << s;
  }
}

INSTANTIATE_TEST_SUITE_P(Cones, CoverageBySampling,
                         ::testing::Values(std::make_pair(std::size_t{2}, kPi / 2), std::make_pair(std::size_t{2}, 0.2),
                                           std::make_pair(std::size_t{3}, kPi / 6),
                                           std::make_pair(std::size_t{3}, 0.3), std::make_pair(std::size_t{4}, 0.6)));

TEST(ConeCover, AxisDirectionsMapToTheirOwnCone) {
  for (auto [dim, theta] : {std::pair<std::size_t, double>{2, 0.3}, {3, kPi / 6}, {4, 0.7}}) {
    const auto c = ConeCover::build(dim, theta);
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c.cone_of(c.axis(i)), i);
  }
}

TEST(ConeCover, AxesAreSeparated) {
  for (auto [dim, theta] : {std::pair<std::size_t, double>{2, 0.3}, {3, kPi / 6}, {3, 0.4}}) {
    const auto c = ConeCover::build(dim, theta);
    double closest = kPi;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j) closest = std::min(closest, angle_between(c.axis(i), c.axis(j)));
    EXPECT_GT(closest, theta / 4) << "dim " << dim << " theta " << theta;
  }
}

TEST(ConeCover, CountScalesLikeApertureToTheOneMinusD) {
  const auto a = ConeCover::build(3, 0.4);
  const auto b = ConeCover::build(3, 0.2);
  const double ratio = static_cast<double>(b.size()) / static_cast<double>(a.size());
  EXPECT_GT(ratio, 2.0);
  EXPECT_LT(ratio, 8.0);
}

TEST(ConeCover, Deterministic) {
  const auto a = ConeCover::build(3, 0.5);
  const auto b = ConeCover::build(3, 0.5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_TRUE(std::equal(a.axis(i).begin(), a.axis(i).end(), b.axis(i).begin()));
}

std::size_t first_sector_count(double eps) {
  for (std::size_t k = 9;; ++k) {
    if (1.0 / (1.0 - 2.0 * std::sin(kPi / static_cast<double>(k))) <= 1.0 + eps) return k;
  }
}

TEST(ApertureForEpsilon, PlanarSectorCount) {
  EXPECT_EQ(planar_sector_count(1.0), 13u);  // k = 10 gives 2.618 > 2, first bound <= 2 is at 13
  EXPECT_EQ(planar_sector_count(0.25), 32u);
  for (double eps : {0.5, 0.1, 0.05, 0.01}) EXPECT_EQ(planar_sector_count(eps), first_sector_count(eps));
  EXPECT_NEAR(aperture_for_epsilon(2, 0.25), 2 * kPi / 32, 1e-15);
}

TEST(ApertureForEpsilon, PlanarGrowthIsInverseLinear) {
  const double a = static_cast<double>(planar_sector_count(0.02));
  const double b = static_cast<double>(planar_sector_count(0.01));
  EXPECT_NEAR(b / a, 2.0, 0.1);
}

TEST(ApertureForEpsilon, HigherDimensions) {
  EXPECT_DOUBLE_EQ(aperture_for_epsilon(3, 0.5), 0.5 / (2 * std::sqrt(3.0)));
  EXPECT_DOUBLE_EQ(aperture_for_epsilon(1, 0.5), 0.5 / 2);
  EXPECT_THROW(aperture_for_epsilon(2, 0.0), std::invalid_argument);
  EXPECT_THROW(aperture_for_epsilon(3, 1.0), std::invalid_argument);
}

}  // namespace
}  // namespace ospan
