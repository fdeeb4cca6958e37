#pragma once

// Scripted scenes shared by the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <vector>

#include <ltp/occupancy.hpp>
#include <ltp/scene.hpp>

#include "oracles.hpp"

namespace ltp::testing {

struct ScriptedScene {
  Scene scene;
  GridSpec grid;
  Vec3 init;
  Vec3 goal;
};

/// 96 m x 96 m x 48 m grid whose bottom sits on the ground plane.
inline GridSpec local_grid() {
  GridSpec g;
  g.dims = {48, 48, 12};
  g.resolution = {2.0, 2.0, 4.0};
  g.center = {0.0, 0.0, 24.0};
  return g;
}

/// Closed 20 m box around the goal. Coordinates avoid cell boundaries.
inline ScriptedScene hollow_box_scene() {
  ScriptedScene s;
  s.scene.ground_z = 0.0;
  s.scene.bounds = {{-100.0, -100.0}, {100.0, 100.0}};
  s.scene.boxes.push_back(Box{{-10.3, -9.1, 0.0}, {9.7, 10.9, 20.6}});
  s.grid = local_grid();
  s.init = {-30.3, 0.3, 10.2};
  s.goal = {0.5, 0.5, 10.2};
  return s;
}

/// Sensor poses on two rings around the box plus one overhead. With
/// `skip_positive_x`, only poses with x <= -15 are kept, so the +x face is
/// never seen.
inline std::vector<Vec3> orbit_poses(bool skip_positive_x) {
  std::vector<Vec3> poses;
  for (double z : {10.2, 34.2}) {
    for (int k = 0; k < 12; ++k) {
      const double a = 2.0 * std::numbers::pi * k / 12.0 + 0.01;
      const Vec3 p(30.0 * std::cos(a), 30.0 * std::sin(a), z);
      if (!skip_positive_x || p.x() <= -15.0) poses.push_back(p);
    }
  }
  poses.push_back(skip_positive_x ? Vec3(-18.3, 0.2, 40.2) : Vec3(0.3, 0.2, 40.2));
  return poses;
}

inline OccupancyGrid sense_from(const ScriptedScene& s, const std::vector<Vec3>& poses,
                                const LidarConfig& lidar) {
  OccupancyGrid g(s.grid);
  for (const auto& p : poses) g = sense_and_update(s.scene, std::move(g), SensorPose{p}, lidar);
  return g;
}

/// U-shaped wall open toward +x with the goal inside the cup and the init
/// point behind its closed side.
inline ScriptedScene c_trap_scene() {
  ScriptedScene s;
  s.scene.ground_z = 0.0;
  s.scene.bounds = {{-100.0, -100.0}, {100.0, 100.0}};
  s.scene.boxes.push_back(Box{{-12.3, -15.1, 0.0}, {-10.3, 15.1, 30.6}});
  s.scene.boxes.push_back(Box{{-12.3, 13.1, 0.0}, {10.3, 15.1, 30.6}});
  s.scene.boxes.push_back(Box{{-12.3, -15.1, 0.0}, {10.3, -13.1, 30.6}});
  s.grid = local_grid();
  s.init = {-35.3, 0.3, 10.2};
  s.goal = {0.5, 0.5, 10.2};
  return s;
}

inline OccupancyGrid omniscient_grid(const ScriptedScene& s) {
  OccupancyGrid g(s.grid);
  mark_surfaces(s.scene, g);
  return g;
}

}  // namespace ltp::testing
