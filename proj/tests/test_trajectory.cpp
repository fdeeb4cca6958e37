#include <gtest/gtest.h>

#include <stdexcept>

#include <ltp/trajectory.hpp>

#include "support/oracles.hpp"

namespace ltp {
namespace {

TEST(Trajectory, RejectsFewerThanTwoPoints) {
  EXPECT_THROW(Trajectory({Vec3::Zero()}), std::invalid_argument);
  EXPECT_THROW(Trajectory({Vec3::Zero(), Vec3::Zero()}), std::invalid_argument);
}

TEST(Trajectory, DedupKeepsDistinctPoints) {
  auto t = Trajectory::from_points_dedup({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {1, 0, 0}, {1, 2, 0}});
  EXPECT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t.length(), 3.0);
  EXPECT_THROW(Trajectory::from_points_dedup({{1, 1, 1}, {1, 1, 1}}), std::invalid_argument);
}

TEST(Trajectory, PointAtClampsAndInterpolates) {
  Trajectory t({{0, 0, 0}, {10, 0, 0}, {10, 10, 0}});
  EXPECT_TRUE(t.point_at(-5.0).isApprox(Vec3(0, 0, 0)));
  EXPECT_TRUE(t.point_at(15.0).isApprox(Vec3(10, 5, 0)));
  EXPECT_TRUE(t.point_at(99.0).isApprox(Vec3(10, 10, 0)));
  EXPECT_EQ(t.segment_at(3.0), 0u);
  EXPECT_EQ(t.segment_at(12.0), 1u);
}

TEST(Trajectory, CumulativeMatchesPairwiseSum) {
  testing::Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<Vec3> pts;
    const int n = testing::uniform_int(rng, 2, 20);
    for (int i = 0; i < n; ++i)
      pts.emplace_back(testing::uniform(rng, -50, 50), testing::uniform(rng, -50, 50),
                       testing::uniform(rng, 0, 30));
    Trajectory t(pts);
    double s = 0.0;
    for (int i = 1; i < n; ++i) {
      s += (pts[i] - pts[i - 1]).norm();
      EXPECT_NEAR(t.cumulative()[i], s, 1e-12);
    }
    EXPECT_NEAR(t.length(), s, 1e-12);
  }
}

}  // namespace
}  // namespace ltp
