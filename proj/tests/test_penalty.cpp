#include <gtest/gtest.h>

#include <cmath>

#include <ltp/penalty.hpp>

#include "support/oracles.hpp"

namespace ltp {
namespace {

using testing::Rng;
using testing::uniform;

OccupancyGrid open_grid() { return OccupancyGrid(testing::spec_at_origin({50, 50, 10}, {2, 2, 4})); }

Vec3 random_point(Rng& rng) { return {uniform(rng, 1, 99), uniform(rng, 1, 99), uniform(rng, 1, 39)}; }

TEST(Length, Examples) {
  EXPECT_DOUBLE_EQ(trajectory_length(Trajectory({{0, 0, 0}, {10, 0, 0}})), 10.0);
  EXPECT_DOUBLE_EQ(trajectory_length(Trajectory({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}})), 3.0);
}

TEST(Eps0, EmptyAndBlocked) {
  OccupancyGrid g = open_grid();
  const Trajectory t({{1, 1, 1}, {50, 50, 20}, {99, 1, 1}});
  EXPECT_EQ(eps0(t, g), 0.0);
  g.set_occupied(*g.index_of({25.5, 25.5, 10.5}));
  EXPECT_EQ(eps0(t, g), kInfinity);
  EXPECT_THROW(eps0(Trajectory({{1, 1, 1}, {101, 1, 1}}), g), OutsideCoverage);
}

TEST(Eps0, GrazingFaceAgreesWithSampling) {
  OccupancyGrid g(testing::spec_at_origin({10, 10, 10}, {1, 1, 1}));
  for (int x = 2; x < 8; ++x) g.set_occupied({x, 5, 5});
  // Runs just below the occupied row, inside the free cells.
  const Trajectory t({{1.5, 4.999, 5.5}, {8.5, 4.999, 5.5}});
  EXPECT_FALSE(testing::supersample_hits(g, t.front(), t.back(), 1e-4));
  EXPECT_EQ(eps0(t, g), 0.0);
  const Trajectory u({{1.5, 5.001, 5.5}, {8.5, 5.001, 5.5}});
  EXPECT_TRUE(testing::supersample_hits(g, u.front(), u.back(), 1e-4));
  EXPECT_EQ(eps0(u, g), kInfinity);
}

TEST(Eps1, Examples) {
  EXPECT_NEAR(eps1(Trajectory({{0, 0, 0}, {10, 0, 0}}), {0, 0, 0}, {10, 0, 0}), 1.0, 1e-12);
  EXPECT_NEAR(eps1(Trajectory({{0, 0, 0}, {5, 5, 0}, {10, 0, 0}}), {0, 0, 0}, {10, 0, 0}),
              2.0 * std::sqrt(50.0) / 10.0, 1e-12);
  EXPECT_THROW(eps1(Trajectory({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}), {0, 0, 0}, {0, 0, 0}),
               std::invalid_argument);
}

TEST(Eps1, AtLeastOneAndScaleInvariant) {
  Rng rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<Vec3> pts;
    for (int i = 0, n = testing::uniform_int(rng, 2, 8); i < n; ++i) pts.push_back(random_point(rng));
    const Trajectory t(pts);
    const double e = eps1(t, pts.front(), pts.back());
    EXPECT_GE(e, 1.0 - 1e-9);
    const double s = uniform(rng, 0.01, 100);
    std::vector<Vec3> scaled;
    for (const auto& p : pts) scaled.push_back(s * p);
    EXPECT_NEAR(eps1(Trajectory(scaled), scaled.front(), scaled.back()), e, 1e-9 * e);
  }
}

TEST(Eps2, Examples) {
  const auto ones = PriorityMap::uniform(60, 60, 2.0, Vec2::Zero(), 1.0);
  const auto zeros = PriorityMap::uniform(60, 60, 2.0, Vec2::Zero(), 0.0);
  const Trajectory t({{3.3, 7.1, 10}, {90.2, 44.4, 20}, {20, 100, 5}});
  EXPECT_NEAR(eps2(t, ones), -1.0, 1e-12);
  EXPECT_EQ(eps2(t, zeros), 0.0);

  PriorityMap half(60, 60, 2.0, Vec2::Zero());
  for (int y = 0; y < 60; ++y)
    for (int x = 0; x < 30; ++x) half.set(x, y, 1.0);
  EXPECT_NEAR(eps2(Trajectory({{10, 50, 5}, {110, 50, 5}}), half), -0.5, 1e-3);
}

TEST(Eps2, BoundedAndMatchesFineIntegral) {
  Rng rng(61);
  const OccupancyGrid g = open_grid();
  for (int rep = 0; rep < 40; ++rep) {
    const auto map = testing::random_priority(rng, g);
    std::vector<Vec3> pts;
    for (int i = 0, n = testing::uniform_int(rng, 2, 6); i < n; ++i) pts.push_back(random_point(rng));
    const Trajectory t(pts);
    const double e = eps2(t, map);
    EXPECT_GE(e, -1.0);
    EXPECT_LE(e, 0.0);
    const double ref = -testing::brute_priority_integral(pts, map, 20000) / t.length();
    EXPECT_NEAR(e, ref, 2e-3);
  }
}

TEST(Eps2, CollinearInsertionInvariant) {
  Rng rng(62);
  const OccupancyGrid g = open_grid();
  for (int rep = 0; rep < 100; ++rep) {
    const auto map = testing::random_priority(rng, g);
    const Vec3 a = random_point(rng), b = random_point(rng);
    std::vector<double> ts{0.0, 1.0};
    for (int k = 0, n = testing::uniform_int(rng, 1, 10); k < n; ++k) ts.push_back(uniform(rng, 0, 1));
    std::sort(ts.begin(), ts.end());
    std::vector<Vec3> pts;
    for (double s : ts) pts.push_back(a + s * (b - a));
    EXPECT_NEAR(eps2(Trajectory::from_points_dedup(pts), map), eps2(Trajectory({a, b}), map), 1e-9);
  }
}

TEST(Eps2, QuadratureConverges) {
  PriorityMap smooth(50, 50, 2.0, Vec2::Zero());
  for (int y = 0; y < 50; ++y)
    for (int x = 0; x < 50; ++x) smooth.set(x, y, 0.5 + 0.5 * std::sin(0.05 * x) * std::cos(0.07 * y));
  smooth.set_sampling(PrioritySampling::bilinear);
  const Trajectory t({{3, 4, 5}, {97, 61, 5}, {12, 88, 5}});
  const double step = priority_quadrature_step(smooth);
  EXPECT_DOUBLE_EQ(step, 1.0);
  EXPECT_LT(std::abs(priority_integral(t, smooth, step) - priority_integral(t, smooth, step / 2)) /
                t.length(),
            1e-3);
}

TEST(TotalPenalty, Examples) {
  OccupancyGrid g = open_grid();
  const auto ones = PriorityMap::uniform(50, 50, 2.0, Vec2::Zero(), 1.0);
  const Vec3 a(5, 5, 5), b(80, 40, 5);
  const Trajectory line({a, b});
  EXPECT_NEAR(total_penalty(line, g, ones, {1.0, 0.0}, a, b).total, 1.0, 1e-12);
  const auto r = total_penalty(line, g, ones, {0.5, 1.0}, a, b);
  EXPECT_NEAR(r.total, -0.5, 1e-12);
  EXPECT_NEAR(r.total, r.eps0 + 0.5 * r.eps1 + 1.0 * r.eps2, 1e-15);
  g.set_occupied(*g.index_of(0.5 * (a + b)));
  for (PenaltyWeights w : {PenaltyWeights{1, 0}, PenaltyWeights{0, 1}, PenaltyWeights{3, 7}}) {
    const auto c = total_penalty(line, g, ones, w, a, b);
    EXPECT_EQ(c.total, kInfinity);
    EXPECT_TRUE(c.collides());
  }
}

TEST(TotalPenalty, MonotoneInLengthAndPriority) {
  const OccupancyGrid g = open_grid();
  const auto half = PriorityMap::uniform(50, 50, 2.0, Vec2::Zero(), 0.5);
  const auto full = PriorityMap::uniform(50, 50, 2.0, Vec2::Zero(), 1.0);
  const Vec3 a(5, 50, 5), b(95, 50, 5);
  const Trajectory straight({a, b}), bent({a, {50, 70, 5}, b});
  const PenaltyWeights w{1.0, 2.0};
  EXPECT_LT(total_penalty(straight, g, half, w, a, b).total, total_penalty(bent, g, half, w, a, b).total);
  EXPECT_LT(total_penalty(straight, g, full, w, a, b).total,
            total_penalty(straight, g, half, w, a, b).total);
}

TEST(PenaltyWeightsTest, Validation) {
  EXPECT_THROW((PenaltyWeights{0, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((PenaltyWeights{-1, 1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((PenaltyWeights{0, 1}.validate()));
}

}  // namespace
}  // namespace ltp
