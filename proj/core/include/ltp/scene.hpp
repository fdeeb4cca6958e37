#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ltp/occupancy.hpp"
#include "ltp/trajectory.hpp"

namespace ltp {

/// Axis-aligned box obstacle, min/max corners in meters.
struct Box {
  Vec3 min;
  Vec3 max;

  bool contains_strictly(const Vec3& p) const {
    return (p.array() > min.array()).all() && (p.array() < max.array()).all();
  }
};

struct Bounds2 {
  Vec2 min{0.0, 0.0};
  Vec2 max{0.0, 0.0};

  bool contains(const Vec2& p) const {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }
  Vec2 extent() const { return max - min; }
};

/// Static ground-truth world: a ground plane plus box obstacles.
struct Scene {
  std::vector<Box> boxes;
  double ground_z = 0.0;
  Bounds2 bounds;

  /// Throws std::invalid_argument when a box is degenerate or dips below
  /// the ground plane.
  void validate() const;
};

struct LidarConfig {
  double max_range = 50.0;
  /// Unit vectors in the sensor frame.
  std::vector<Vec3> directions;

  /// Azimuth/elevation lattice; elevations are spread evenly over
  /// [min_elevation, max_elevation] inclusive (radians).
  static LidarConfig lattice(int azimuths, int elevations, double min_elevation,
                             double max_elevation, double max_range);

  /// 360 azimuths x 9 elevations spanning +-30 degrees, 50 m range.
  static LidarConfig standard();

  void validate() const;
};

struct SensorPose {
  Vec3 position = Vec3::Zero();
  /// Rotation from sensor frame to world frame.
  Eigen::Matrix3d orientation = Eigen::Matrix3d::Identity();
};

enum class SurfaceKind { box, ground };

struct RayHit {
  Vec3 point;
  double range = 0.0;
  SurfaceKind surface = SurfaceKind::ground;
  std::size_t box = 0;  // valid when surface == box
};

/// Nearest intersection with any box face or the ground plane within
/// max_range. The coordinate normal to the hit face is written exactly, so
/// the hit lands on the face plane without rounding drift.
std::optional<RayHit> cast_ray(const Scene& scene, const Vec3& origin, const Vec3& dir,
                               double max_range);

/// Casts every lattice ray from the pose and marks the cell holding each hit
/// as occupied. Hits outside the grid are dropped. Nothing is ever cleared.
OccupancyGrid sense_and_update(const Scene& scene, OccupancyGrid grid, const SensorPose& pose,
                               const LidarConfig& cfg);

/// Marks every cell that intersects a box face or the ground plane, i.e.
/// the map an omniscient surface sensor would build.
void mark_surfaces(const Scene& scene, OccupancyGrid& grid);

struct SceneParams {
  Bounds2 bounds{{0.0, 0.0}, {1000.0, 1000.0}};
  double ground_z = 0.0;
  /// Boxes per square kilometer; 0 gives an empty scene.
  double density_per_km2 = 60.0;
  double min_footprint = 15.0;
  double max_footprint = 50.0;
  double min_height = 15.0;
  double max_height = 90.0;
  /// Minimum clearance between generated boxes (street width).
  double street_gap = 10.0;
  /// Each point gets a closed box placed strictly around it.
  std::vector<Vec3> hollow_points;
  double hollow_size = 20.0;
};

/// Deterministic for a fixed seed.
Scene generate_scene(std::uint64_t seed, const SceneParams& params);

/// True iff the segment passes through the open interior of any box.
bool segment_hits_scene(const Scene& scene, const Vec3& a, const Vec3& b);
bool segment_hits_box(const Box& box, const Vec3& a, const Vec3& b);

}  // namespace ltp
