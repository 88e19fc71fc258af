#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "ospan/errors.hpp"
#include "ospan/hst.hpp"
#include "ospan/random.hpp"
#include "ospan/verify.hpp"
#include "support.hpp"

namespace ospan {
namespace {

HstTree two_level_fixture() {
  // root 2 -> { internal 1 -> {x=0, y=1}, z=2 }
  HstTree t;
  const auto root = t.add_internal(HstTree::kNoParent, 2.0);
  const auto inner = t.add_internal(root, 1.0);
  t.add_leaf(inner, 0);
  t.add_leaf(inner, 1);
  t.add_leaf(root, 2);
  return t;
}

FiniteMetric shuffled_metric(const HstTree& tree, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> perm(tree.leaf_count());
  std::iota(perm.begin(), perm.end(), 0);
  shuffle(std::span<std::size_t>(perm), rng);
  return tree.relabeled(perm).to_metric();
}

TEST(HstTree, DistancesAreLcaLabels) {
  const auto t = two_level_fixture();
  EXPECT_NO_THROW(t.validate());
  EXPECT_DOUBLE_EQ(t.distance(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(t.distance(0, 2), 2.0);
  EXPECT_DOUBLE_EQ(t.distance(1, 1), 0.0);
  EXPECT_TRUE(t.is_alpha_hst(2.0));
  EXPECT_FALSE(t.is_alpha_hst(2.5));
  const auto m = t.to_metric();
  EXPECT_TRUE(validate_ultrametric(m).empty());
  EXPECT_TRUE(validate_metric(m).empty());
}

TEST(HstTree, StarWithOneLabelIsUniform) {
  HstTree t;
  const auto root = t.add_internal(HstTree::kNoParent, 1.0);
  for (std::size_t i = 0; i < 3; ++i) t.add_leaf(root, i);
  const auto m = t.to_metric();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(m(i, j), 1.0);
}

TEST(HstTree, ValidationErrors) {
  HstTree bad_order;
  const auto r = bad_order.add_internal(HstTree::kNoParent, 1.0);
  const auto c = bad_order.add_internal(r, 1.0);
  bad_order.add_leaf(c, 0);
  bad_order.add_leaf(r, 1);
  EXPECT_THROW(bad_order.validate(), std::invalid_argument);

  HstTree gap;
  const auto g = gap.add_internal(HstTree::kNoParent, 1.0);
  gap.add_leaf(g, 0);
  gap.add_leaf(g, 2);
  EXPECT_THROW(gap.validate(), std::invalid_argument);

  HstTree t;
  EXPECT_THROW(t.add_internal(HstTree::kNoParent, 0.0), std::invalid_argument);
  const auto root = t.add_internal(HstTree::kNoParent, 1.0);
  EXPECT_THROW(t.add_internal(HstTree::kNoParent, 1.0), std::invalid_argument);
  const auto leaf = t.add_leaf(root, 0);
  EXPECT_THROW(t.add_leaf(leaf, 1), std::invalid_argument);
  EXPECT_THROW(t.add_leaf(root, 0), std::invalid_argument);
}

TEST(HstTree, Relabel) {
  const auto t = two_level_fixture().relabeled(std::vector<std::size_t>{2, 0, 1});
  EXPECT_DOUBLE_EQ(t.distance(2, 0), 1.0);
  EXPECT_DOUBLE_EQ(t.distance(1, 2), 2.0);
  EXPECT_THROW(two_level_fixture().relabeled(std::vector<std::size_t>{0, 0, 1}), std::invalid_argument);
}

TEST(RandomHst, SingleLeaf) {
  const auto t = random_hst(1, 4, 1);
  EXPECT_EQ(t.leaf_count(), 1u);
  EXPECT_EQ(t.to_metric().size(), 1u);
}

TEST(RandomHst, DepthOneIsUniform) {
  const auto m = random_hst(3, 1, 9).to_metric();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(m(i, j), 1.0);
}

TEST(RandomHst, IsAnUltrametricAndDeterministic) {
  const auto t = random_hst(64, 6, 42);
  EXPECT_NO_THROW(t.validate());
  EXPECT_TRUE(validate_ultrametric(t.to_metric()).empty());
  EXPECT_EQ(t.to_metric().to_matrix(), random_hst(64, 6, 42).to_metric().to_matrix());
  EXPECT_NE(t.to_metric().to_matrix(), random_hst(64, 6, 43).to_metric().to_matrix());
}

TEST(RandomHst, MinRatioGivesAlphaHst) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_hst(50, 6, seed, 3.0);
    EXPECT_TRUE(t.is_alpha_hst(3.0));
    EXPECT_NO_THROW(t.validate());
  }
}

TEST(Rounding, PowersOfAlpha) {
  EXPECT_EQ(round_up_to_power(3, 2), 4.0);
  EXPECT_EQ(round_up_to_power(4, 2), 4.0);
  EXPECT_EQ(round_up_to_power(1, 2), 1.0);
  EXPECT_EQ(round_up_to_power(0, 2), 0.0);
  EXPECT_EQ(round_up_to_power(0.3, 2), 0.5);
  EXPECT_THROW(round_up_to_power(1, 1), std::invalid_argument);
  Rng rng(1);
  for (int s = 0; s < 2000; ++s) {
    const double d = std::exp(unit_uniform(rng) * 40 - 20);
    for (double alpha : {1.5, 2.0, 3.0, 10.0}) {
      const double r = round_up_to_power(d, alpha);
      ASSERT_GE(r, d);
      ASSERT_LT(r, alpha * d * (1 + 1e-12));
      const double e = std::log(r) / std::log(alpha);
      ASSERT_NEAR(e, std::round(e), 1e-9);
    }
  }
}

TEST(Rounding, AlphaRoundMetric) {
  const auto u = alpha_round(testing::uniform_metric(5), 2.0);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(u(i, j), 1.0);
  EXPECT_THROW(alpha_round(testing::line_metric({0, 1, 2}), 2.0), MetricViolationError);
  const auto m = random_hst(40, 5, 3).to_metric();
  const auto r = alpha_round(m, 2.0);
  EXPECT_TRUE(validate_ultrametric(r).empty());
  EXPECT_TRUE(validate_metric(r).empty());
  for (std::size_t i = 0; i < 40; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_GE(r(i, j), m(i, j));
      EXPECT_LT(r(i, j), 2.0 * m(i, j));
    }
}

std::size_t kappa_oracle(double eps) {
  std::size_t k = 0;
  while (std::pow(1 + eps, double(k + 1)) <= 1 / eps) ++k;
  return k;
}

TEST(MultiScale, Kappa) {
  EXPECT_EQ(multiscale_kappa(0.5), 1u);
  EXPECT_EQ(multiscale_kappa(0.25), 6u);
  EXPECT_EQ(multiscale_kappa(0.125), 17u);
  for (double eps : {0.3, 0.1, 0.05, 0.01}) EXPECT_EQ(multiscale_kappa(eps), kappa_oracle(eps));
}

TEST(MultiScale, ScaleGrid) {
  Rng rng(4);
  for (double eps : {0.25, 0.125}) {
    for (std::size_t copy = 0; copy <= multiscale_kappa(eps); ++copy) {
      for (int s = 0; s < 500; ++s) {
        const double d = std::exp(unit_uniform(rng) * 30 - 15);
        const double r = round_up_to_scale_grid(d, eps, copy);
        ASSERT_GE(r, d);
        ASSERT_LT(r, d / eps * (1 + 1e-12));
        const double j = (std::log(r) - double(copy) * std::log1p(eps)) / -std::log(eps);
        ASSERT_NEAR(j, std::round(j), 1e-9);
        ASSERT_EQ(round_up_to_scale_grid(r, eps, copy), r);
      }
    }
  }
  EXPECT_EQ(round_up_to_scale_grid(0.0, 0.25, 1), 0.0);
  EXPECT_EQ(round_up_to_scale_grid(1.0, 0.25, 0), 1.0);
  EXPECT_EQ(round_up_to_scale_grid(5.0, 0.25, 0), 16.0);
}

TEST(NearestFirstArrival, TiesGoToEarliest) {
  EXPECT_EQ(nearest_first_arrival(std::vector<double>{3, 1, 1, 2}), 1u);
  EXPECT_EQ(nearest_first_arrival(std::vector<double>{1 + 1e-13, 1}), 0u);
  EXPECT_EQ(nearest_first_arrival(std::vector<double>{1 + 1e-9, 1}), 1u);
  EXPECT_THROW(nearest_first_arrival(std::vector<double>{}), std::invalid_argument);
}

TEST(HstSpanner, UniformArrivals) {
  HstSpanner s;
  EXPECT_FALSE(s.insert(std::vector<double>{}).has_value());
  EXPECT_EQ(*s.insert(std::vector<double>{1}), (Edge{1, 0, 1}));
  EXPECT_EQ(*s.insert(std::vector<double>{1, 1}), (Edge{2, 0, 1}));
  EXPECT_DOUBLE_EQ(s.spanner().total_weight(), 2.0);
}

TEST(HstSpanner, TwoLevelHandTrace) {
  const auto m = two_level_fixture().to_metric();
  HstSpanner s;
  for (std::size_t i = 0; i < 3; ++i) s.insert(m.row_prefix(i));
  ASSERT_EQ(s.spanner().edge_count(), 2u);
  EXPECT_EQ(s.spanner().edges()[0], (Edge{1, 0, 1}));
  EXPECT_EQ(s.spanner().edges()[1], (Edge{2, 0, 2}));
  EXPECT_DOUBLE_EQ(s.spanner().total_weight(), 3.0);
}

TEST(HstSpanner, RejectsNonUltrametricRows) {
  HstSpanner s;
  s.insert(std::vector<double>{});
  s.insert(std::vector<double>{1});
  EXPECT_THROW(s.insert(std::vector<double>{2, 1}), MetricViolationError);
  EXPECT_EQ(s.size(), 2u);
  HstSpanner unchecked(false);
  unchecked.insert(std::vector<double>{});
  unchecked.insert(std::vector<double>{1});
  EXPECT_NO_THROW(unchecked.insert(std::vector<double>{2, 1}));
}

TEST(HstSpanner, TreeWeightEqualsMst) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = shuffled_metric(random_hst(60, 1 + seed % 7, seed), seed + 100);
    HstSpanner s;
    for (std::size_t i = 0; i < m.size(); ++i) s.insert(m.row_prefix(i));
    EXPECT_EQ(s.spanner().edge_count(), m.size() - 1);
    EXPECT_TRUE(is_connected(s.spanner()));
    const double mst = mst_weight(m);
    EXPECT_NEAR(s.spanner().total_weight(), mst, 1e-12 * mst) << "seed " << seed;
  }
}

TEST(HstSpanner, AlphaHstStretch) {
  for (double alpha : {2.0, 3.0, 5.0}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const auto m = shuffled_metric(random_hst(48, 6, seed, alpha), seed);
      HstSpanner s;
      for (std::size_t i = 0; i < m.size(); ++i) s.insert(m.row_prefix(i));
      EXPECT_TRUE(within_stretch_bound(max_stretch(s.spanner(), m).max_stretch, 2 * alpha / (alpha - 1)));
    }
  }
}

TEST(AlphaRoundedSpanner, StretchAndWeight) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = shuffled_metric(random_hst(64, 6, seed), seed);
    AlphaRoundedSpanner s(2.0);
    for (std::size_t i = 0; i < m.size(); ++i) s.insert(m.row_prefix(i));
    EXPECT_DOUBLE_EQ(s.stretch_bound(), 8.0);
    EXPECT_TRUE(within_stretch_bound(max_stretch(s.spanner(), m).max_stretch, 8.0));
    EXPECT_LE(s.spanner().total_weight(), 2.0 * mst_weight(m) * (1 + 1e-12));
    EXPECT_TRUE(validate_ultrametric(s.rounded()).empty());
    for (const Edge& e : s.spanner().edges()) EXPECT_EQ(e.w, m(e.u, e.v));
  }
}

TEST(AlphaRoundedSpanner, SinglePoint) {
  AlphaRoundedSpanner s(2.0);
  EXPECT_FALSE(s.insert(std::vector<double>{}).has_value());
  EXPECT_EQ(s.spanner().edge_count(), 0u);
  EXPECT_THROW(AlphaRoundedSpanner(1.0), std::invalid_argument);
}

TEST(MultiScaleSpanner, BoundsOnRandomUltrametrics) {
  for (double eps : {0.25, 0.125}) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const auto m = shuffled_metric(random_hst(64, 7, seed), seed);
      MultiScaleSpanner s(eps);
      std::size_t returned = 0;
      for (std::size_t i = 0; i < m.size(); ++i) returned += s.insert(m.row_prefix(i)).size();
      const std::size_t n = m.size();
      EXPECT_EQ(returned, s.spanner().edge_count());
      EXPECT_LE(s.spanner().edge_count(), (s.kappa() + 1) * (n - 1));
      EXPECT_TRUE(within_stretch_bound(max_stretch(s.spanner(), m).max_stretch, 2 * (1 + 3 * eps)));
      EXPECT_LE(s.spanner().total_weight(), s.weight_factor() * mst_weight(m) * (1 + 1e-9));
      for (std::size_t c = 0; c <= s.kappa(); ++c) {
        EXPECT_TRUE(validate_ultrametric(s.copy(c).revealed()).empty());
        EXPECT_TRUE(validate_metric(s.copy(c).revealed()).empty());
      }
    }
  }
}

TEST(MultiScaleSpanner, Parameters) {
  EXPECT_THROW(MultiScaleSpanner(0.5), std::invalid_argument);
  EXPECT_THROW(MultiScaleSpanner(0.0), std::invalid_argument);
  MultiScaleSpanner s(0.25);
  EXPECT_EQ(s.kappa(), 6u);
  EXPECT_DOUBLE_EQ(s.stretch_bound(), 3.5);
  EXPECT_NEAR(s.weight_factor(), (std::pow(1.25, 7) - 1) / 0.25, 1e-12);
}

}  // namespace
}  // namespace ospan
