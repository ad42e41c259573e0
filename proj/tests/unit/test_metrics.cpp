#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "foeed/metrics.hpp"
#include "oracles.hpp"

namespace foeed {
namespace {

ImageGrid grid2x2(double a, double b, double c, double d) {
  ImageGrid g(2, 2);
  g(0, 0) = a;
  g(1, 0) = b;
  g(0, 1) = c;
  g(1, 1) = d;
  return g;
}

TEST(Metrics, HandExamples) {
  const ImageGrid u = grid2x2(0, 10, 20, 30);
  const ImageGrid v = grid2x2(1, 8, 23, 30);
  EXPECT_DOUBLE_EQ(mse(u, v), 3.5);
  EXPECT_DOUBLE_EQ(aae(u, v), 1.5);
  EXPECT_EQ(mse(u, u), 0.0);
  EXPECT_EQ(aae(u, u), 0.0);
}

TEST(Metrics, ConstantOffset) {
  std::mt19937_64 rng(1);
  const ImageGrid u = oracle::random_image(7, 5, rng);
  ImageGrid v = u;
  for (double& x : v.values()) x += 3.0;
  EXPECT_NEAR(mse(u, v), 9.0, 1e-9);
  EXPECT_NEAR(aae(u, v), 3.0, 1e-9);
}

TEST(Metrics, SymmetricAndJensen) {
  std::mt19937_64 rng(2);
  for (int n = 0; n < 200; ++n) {
    const ImageGrid u = oracle::random_image(6, 4, rng);
    const ImageGrid v = oracle::random_image(6, 4, rng);
    EXPECT_DOUBLE_EQ(mse(u, v), mse(v, u));
    EXPECT_DOUBLE_EQ(aae(u, v), aae(v, u));
    EXPECT_LE(aae(u, v) * aae(u, v), mse(u, v) + 1e-12);
    EXPECT_GT(mse(u, v), 0.0);
  }
}

TEST(Metrics, MultiChannelAveragesAll) {
  const std::vector<ImageGrid> u{grid2x2(0, 0, 0, 0), grid2x2(0, 0, 0, 0)};
  const std::vector<ImageGrid> v{grid2x2(2, 2, 2, 2), grid2x2(4, 4, 4, 4)};
  EXPECT_DOUBLE_EQ(mse(u, v), 10.0);
  EXPECT_DOUBLE_EQ(aae(u, v), 3.0);
}

TEST(Metrics, RejectsMismatch) {
  EXPECT_THROW(mse(ImageGrid(2, 2), ImageGrid(2, 3)), std::invalid_argument);
  EXPECT_THROW(aae(ImageGrid(3, 2), ImageGrid(2, 2)), std::invalid_argument);
  EXPECT_THROW(mse(std::vector<ImageGrid>{ImageGrid(2, 2)}, std::vector<ImageGrid>{}),
               std::invalid_argument);
}

}  // namespace
}  // namespace foeed
