#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "trimcusum/empirical.hpp"
#include "trimcusum/errors.hpp"
#include "trimcusum/heavy_tail.hpp"

namespace trimcusum {
namespace {

TEST(CeilingRank, ExactProducts) {
  EXPECT_EQ(ceiling_rank(2000, 0.95), 1900u);
  EXPECT_EQ(ceiling_rank(100000, 0.95), 95000u);
  EXPECT_EQ(ceiling_rank(10, 0.95), 10u);
  EXPECT_EQ(ceiling_rank(1, 0.95), 1u);
  EXPECT_EQ(ceiling_rank(3, 0.5), 2u);
  EXPECT_THROW(ceiling_rank(0, 0.5), DomainError);
  EXPECT_THROW(ceiling_rank(5, 1.0), DomainError);
}

TEST(EmpiricalQuantile, IsAnElementAndMatchesSortedRank) {
  const std::vector<double> v{5.0, 1.0, 4.0, 2.0, 3.0};
  EXPECT_EQ(empirical_quantile(v, 0.5), 3.0);
  EXPECT_EQ(empirical_quantile(v, 0.95), 5.0);
  EXPECT_EQ(empirical_quantile(v, 0.2), 1.0);
  EXPECT_EQ(empirical_quantile(std::vector<double>{7.5}, 0.95), 7.5);
}

TEST(QuantileStandardError, ShrinksWithCount) {
  const TailModel normal = TailModel::gaussian();
  auto se_at = [&](std::size_t count) {
    auto x = sample_iid(normal, count, 3);
    std::sort(x.begin(), x.end());
    return quantile_standard_error(x, 0.95);
  };
  const double small = se_at(1000), large = se_at(100000);
  EXPECT_GT(small, large);
  // Asymptotic value sqrt(p(1-p)/B) / phi(z_0.95) = 0.00668 at B = 1e5.
  EXPECT_NEAR(large, 0.00668, 0.0008);
}

TEST(Moments, VarianceAbsentForSingleton) {
  const Moments one = moments(std::vector<double>{2.5});
  EXPECT_EQ(one.mean, 2.5);
  EXPECT_FALSE(one.variance.has_value());
  const Moments two = moments(std::vector<double>{1.0, 3.0});
  EXPECT_EQ(two.mean, 2.0);
  EXPECT_EQ(two.variance.value(), 2.0);
}

TEST(Median, OddAndEven) {
  EXPECT_EQ(median(std::vector<double>{3.0, 1.0, 2.0}), 2.0);
  EXPECT_EQ(median(std::vector<double>{4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_THROW(median(std::vector<double>{}), DomainError);
}

TEST(KsToNormal, SmallForNormalLargeForShifted) {
  auto x = sample_iid(TailModel::gaussian(), 20000, 8);
  EXPECT_LT(ks_to_normal(x), 1.36 / std::sqrt(20000.0) * 1.5);
  for (auto& v : x) v += 1.0;
  EXPECT_GT(ks_to_normal(x), 0.3);
  EXPECT_NEAR(ks_to_normal(std::vector<double>{0.0}), 0.5, 1e-15);
}

}  // namespace
}  // namespace trimcusum
