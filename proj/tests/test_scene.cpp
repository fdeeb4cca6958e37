#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <ltp/scene.hpp>

#include "support/oracles.hpp"
#include "support/scenarios.hpp"

namespace ltp {
namespace {

using testing::Rng;
using testing::uniform;

Scene one_box() {
  Scene s;
  s.bounds = {{-100, -100}, {100, 100}};
  s.boxes.push_back(Box{{10, 10, 0}, {20, 20, 20}});
  return s;
}

/// Closed cell [lo, hi] touches a box face or the ground plane.
bool cell_on_surface(const Scene& scene, const OccupancyGrid& g, const GridIndex& i) {
  const Vec3 lo = g.origin() + Vec3(i.ix, i.iy, i.iz).cwiseProduct(g.resolution());
  const Vec3 hi = lo + g.resolution();
  if (lo.z() <= scene.ground_z && scene.ground_z <= hi.z()) return true;
  for (const Box& b : scene.boxes) {
    const bool touches = (lo.array() <= b.max.array()).all() && (b.min.array() <= hi.array()).all();
    const bool inside = (lo.array() > b.min.array()).all() && (hi.array() < b.max.array()).all();
    if (touches && !inside) return true;
  }
  return false;
}

TEST(CastRay, Examples) {
  const Scene s = one_box();
  auto hit = cast_ray(s, {0, 15, 15}, {1, 0, 0}, 50);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->point, Vec3(10, 15, 15));
  EXPECT_EQ(hit->surface, SurfaceKind::box);
  EXPECT_DOUBLE_EQ(hit->range, 10.0);
  EXPECT_FALSE(cast_ray(s, {0, 15, 15}, {-1, 0, 0}, 50));

  Scene far;
  far.boxes.push_back(Box{{60, -5, 0}, {70, 5, 10}});
  EXPECT_FALSE(cast_ray(far, {0, 0, 5}, {1, 0, 0}, 50));
  EXPECT_TRUE(cast_ray(far, {0, 0, 5}, {1, 0, 0}, 61));
}

TEST(CastRay, GroundAndNearest) {
  Scene s = one_box();
  s.boxes.push_back(Box{{30, 10, 0}, {40, 20, 20}});
  auto hit = cast_ray(s, {0, 15, 5}, {1, 0, 0}, 100);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->box, 0u);
  const Vec3 down = Vec3(1, 0, -1).normalized();
  auto g = cast_ray(s, {-20, 0, 10}, down, 100);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->surface, SurfaceKind::ground);
  EXPECT_DOUBLE_EQ(g->point.z(), 0.0);
  EXPECT_NEAR(g->point.x(), -10.0, 1e-12);
}

TEST(Sense, EmptySceneLeavesGridUnchanged) {
  Scene s;
  s.ground_z = -1000.0;
  OccupancyGrid g(testing::local_grid());
  const auto h = sense_and_update(s, g, SensorPose{Vec3(0, 0, 20)}, LidarConfig::standard());
  EXPECT_EQ(h, g);
}

TEST(Sense, SingleRayMarksHitCell) {
  const Scene s = one_box();
  GridSpec spec = testing::local_grid();
  OccupancyGrid g(spec);
  LidarConfig one;
  one.max_range = 50;
  one.directions = {Vec3(1, 0, 0)};
  const Vec3 p(0.3, 14.7, 13.1);
  const auto h = sense_and_update(s, g, SensorPose{p}, one);
  EXPECT_EQ(h.occupied_count(), 1u);
  const auto hit = cast_ray(s, p, {1, 0, 0}, 50);
  ASSERT_TRUE(hit);
  EXPECT_TRUE(h.occupied(*h.index_of(hit->point)));
}

TEST(Sense, OrientationRotatesRays) {
  const Scene s = one_box();
  LidarConfig one;
  one.max_range = 50;
  one.directions = {Vec3(0, -1, 0)};
  Eigen::Matrix3d yaw;  // sensor -y maps to world +x
  yaw << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  const auto h = sense_and_update(s, OccupancyGrid(testing::local_grid()),
                                  SensorPose{Vec3(0.3, 14.7, 13.1), yaw}, one);
  ASSERT_EQ(h.occupied_count(), 1u);
  EXPECT_TRUE(h.occupied(*h.index_of({10.0, 14.7, 13.1})));
}

TEST(Sense, QuarterTurnOfSymmetricLatticeIsInvariant) {
  Rng rng(4);
  SceneParams params;
  params.bounds = {{-80, -80}, {80, 80}};
  params.density_per_km2 = 400;
  const Scene s = generate_scene(99, params);
  const LidarConfig lidar = LidarConfig::lattice(360, 9, -0.5, 0.5, 50);
  Eigen::Matrix3d yaw;
  yaw << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  for (int rep = 0; rep < 3; ++rep) {
    const Vec3 p(uniform(rng, -20, 20), uniform(rng, -20, 20), 30.0);
    if (segment_hits_scene(s, p, p)) continue;
    const OccupancyGrid g(testing::local_grid());
    EXPECT_EQ(sense_and_update(s, g, SensorPose{p}, lidar),
              sense_and_update(s, g, SensorPose{p, yaw}, lidar));
  }
}

TEST(Sense, TranslatingWorldAndGridTogether) {
  const testing::ScriptedScene base = testing::hollow_box_scene();
  const Vec3 shift(6.0, -10.0, 8.0);  // whole cells
  Scene moved = base.scene;
  moved.ground_z += shift.z();
  for (Box& b : moved.boxes) {
    b.min += shift;
    b.max += shift;
  }
  GridSpec spec = base.grid;
  spec.center += shift;
  const LidarConfig lidar = LidarConfig::standard();
  const Vec3 p(-30.3, 0.3, 10.2);
  const auto a = sense_and_update(base.scene, OccupancyGrid(base.grid), SensorPose{p}, lidar);
  const auto b = sense_and_update(moved, OccupancyGrid(spec), SensorPose{p + shift}, lidar);
  EXPECT_GT(a.occupied_count(), 0u);
  for (std::size_t k = 0; k < a.cell_count(); ++k)
    EXPECT_EQ(a.occupied(a.unlinear(k)), b.occupied(b.unlinear(k)));
}

TEST(Sense, SurfaceOnlyAndMonotone) {
  Rng rng(21);
  SceneParams params;
  params.bounds = {{-60, -60}, {60, 60}};
  params.density_per_km2 = 500;
  params.hollow_points = {Vec3(0.5, 0.5, 10)};
  const Scene s = generate_scene(5, params);
  OccupancyGrid g(testing::local_grid());
  const LidarConfig lidar = testing::dense_lidar(60);
  std::size_t before = 0;
  for (int rep = 0; rep < 8; ++rep) {
    const Vec3 p(uniform(rng, -45, 45), uniform(rng, -45, 45), uniform(rng, 2, 45));
    if (segment_hits_scene(s, p, p)) continue;
    OccupancyGrid next = sense_and_update(s, g, SensorPose{p}, lidar);
    for (std::size_t k = 0; k < g.cell_count(); ++k)
      if (g.occupied(g.unlinear(k))) EXPECT_TRUE(next.occupied(next.unlinear(k)));
    g = std::move(next);
    EXPECT_GE(g.occupied_count(), before);
    before = g.occupied_count();
  }
  EXPECT_GT(g.occupied_count(), 0u);
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const GridIndex i = g.unlinear(k);
    if (g.occupied(i)) EXPECT_TRUE(cell_on_surface(s, g, i));
  }
}

TEST(Sense, OrbitNeverMarksBoxInterior) {
  const auto sc = testing::hollow_box_scene();
  const auto g = testing::sense_from(sc, testing::orbit_poses(false), testing::dense_lidar(100));
  const Box& box = sc.scene.boxes[0];
  int interior = 0, surface = 0;
  for (std::size_t k = 0; k < g.cell_count(); ++k) {
    const GridIndex i = g.unlinear(k);
    const Vec3 lo = g.origin() + Vec3(i.ix, i.iy, i.iz).cwiseProduct(g.resolution());
    const Vec3 hi = lo + g.resolution();
    if ((lo.array() > box.min.array()).all() && (hi.array() < box.max.array()).all()) {
      ++interior;
      EXPECT_FALSE(g.occupied(i));
    }
    surface += g.occupied(i) && cell_on_surface(sc.scene, g, i);
  }
  EXPECT_GT(interior, 0);
  EXPECT_GT(surface, 100);
}

TEST(Sense, HitsOutsideGridAreDropped) {
  const Scene s = one_box();
  GridSpec spec{{4, 4, 4}, {1, 1, 1}, {0, 15, 15}};
  LidarConfig one;
  one.max_range = 50;
  one.directions = {Vec3(1, 0, 0)};
  const auto h = sense_and_update(s, OccupancyGrid(spec), SensorPose{Vec3(0.1, 15.1, 15.1)}, one);
  EXPECT_EQ(h.occupied_count(), 0u);
}

TEST(Scene, ValidateRejectsBadBoxes) {
  Scene s;
  s.boxes.push_back(Box{{0, 0, 0}, {0, 1, 1}});
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.boxes = {Box{{0, 0, -1}, {1, 1, 1}}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(LidarConfigTest, StandardLattice) {
  const auto l = LidarConfig::standard();
  EXPECT_EQ(l.directions.size(), 360u * 9u);
  EXPECT_DOUBLE_EQ(l.max_range, 50.0);
  double max_el = 0;
  for (const auto& d : l.directions) max_el = std::max(max_el, std::asin(d.z()));
  EXPECT_NEAR(max_el, std::numbers::pi / 6, 1e-12);
  LidarConfig bad = l;
  bad.directions.push_back(Vec3(1, 1, 0));
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(GenerateScene, DeterministicAndValid) {
  SceneParams params;
  const Scene a = generate_scene(42, params), b = generate_scene(42, params);
  ASSERT_EQ(a.boxes.size(), b.boxes.size());
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    EXPECT_EQ(a.boxes[i].min, b.boxes[i].min);
    EXPECT_EQ(a.boxes[i].max, b.boxes[i].max);
  }
  EXPECT_GT(a.boxes.size(), 20u);
  EXPECT_NO_THROW(a.validate());
  for (const Box& box : a.boxes) {
    EXPECT_TRUE(params.bounds.contains(box.min.head<2>()));
    EXPECT_TRUE(params.bounds.contains(box.max.head<2>()));
  }
  for (std::size_t i = 0; i < a.boxes.size(); ++i)
    for (std::size_t j = i + 1; j < a.boxes.size(); ++j) {
      const Box &p = a.boxes[i], &q = a.boxes[j];
      const double gx = std::max(p.min.x() - q.max.x(), q.min.x() - p.max.x());
      const double gy = std::max(p.min.y() - q.max.y(), q.min.y() - p.max.y());
      EXPECT_GE(std::max(gx, gy), params.street_gap);
    }
}

TEST(GenerateScene, DensityZeroAndHollow) {
  SceneParams params;
  params.density_per_km2 = 0;
  EXPECT_TRUE(generate_scene(1, params).boxes.empty());
  params.hollow_points = {Vec3(300, 400, 50), Vec3(10, 10, 5)};
  const Scene s = generate_scene(1, params);
  ASSERT_EQ(s.boxes.size(), 2u);
  for (const Vec3& q : params.hollow_points) {
    bool inside = false;
    for (const Box& b : s.boxes) inside |= b.contains_strictly(q);
    EXPECT_TRUE(inside);
  }
}

TEST(SegmentHitsBox, InteriorVersusGrazing) {
  const Box b{{0, 0, 0}, {10, 10, 10}};
  EXPECT_TRUE(segment_hits_box(b, {-5, 5, 5}, {15, 5, 5}));
  EXPECT_FALSE(segment_hits_box(b, {-5, 10, 5}, {15, 10, 5}));
  EXPECT_FALSE(segment_hits_box(b, {-5, 5, 11}, {15, 5, 11}));
  EXPECT_TRUE(segment_hits_box(b, {5, 5, 5}, {5, 5, 5}));
  EXPECT_TRUE(segment_hits_box(b, {-1, -1, 5}, {11, 11, 5}));
}

}  // namespace
}  // namespace ltp
