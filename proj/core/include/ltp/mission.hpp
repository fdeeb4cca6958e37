#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ltp/occupancy.hpp"
#include "ltp/planner.hpp"
#include "ltp/priority.hpp"
#include "ltp/scene.hpp"
#include "ltp/trajectory.hpp"

namespace ltp {

/// Global waypoints with a cursor on the current goal.
struct WaypointList {
  std::vector<Vec3> points;
  std::size_t cursor = 0;

  bool exhausted() const { return cursor >= points.size(); }
  const Vec3& current() const { return points.at(cursor); }
};

/// Start position plus the waypoints to fly, as produced by the global path
/// generator.
struct GlobalPath {
  Vec3 start = Vec3::Zero();
  WaypointList waypoints;
};

struct MissionConfig {
  double speed = 3.0;           // m/s
  double tick = 1.0;            // s
  double arrival_radius = 0.0;  // m; <= 0 means one grid cell diagonal
  /// Per-waypoint tick budget as a multiple of straight-line flight time.
  double budget_factor = 4.0;
  PlannerConfig planner;
  /// Vertical search freedom (cells) for every plan, overriding
  /// planner.search.z_band; nullopt keeps the planner's setting. The default
  /// keeps the vehicle in its flight layer: the lattice never sees the roof
  /// right below it, so descending is not safe.
  std::optional<int> z_band = 0;
  LidarConfig lidar = LidarConfig::standard();
  GridSpec grid;  // center is replaced by the start position

  double effective_arrival_radius() const;
  void validate() const;
};

enum class WaypointOutcome { reached, dropped_unreachable, dropped_timeout };
std::string_view to_string(WaypointOutcome outcome);

enum class PlanReason { new_goal, blocked, continuation };
std::string_view to_string(PlanReason reason);

struct PlanEvent {
  int tick = 0;
  PlanReason reason = PlanReason::new_goal;
  std::size_t waypoint = 0;
  Vec3 from = Vec3::Zero();
  bool success = false;
  /// Planning started from a neighbouring free cell because the vehicle's
  /// own cell had just been marked occupied.
  bool escaped = false;
  double runtime_s = 0.0;
  std::size_t expansions = 0;
};

struct MissionLog {
  std::vector<Vec3> executed;  // vertices flown through plus tick-end samples
  std::vector<double> times;   // seconds, parallel to executed
  std::vector<WaypointOutcome> outcomes;
  std::vector<int> outcome_ticks;
  std::vector<std::size_t> outcome_samples;  // executed.size() when retired
  std::vector<PlanEvent> plans;
  int ticks = 0;
  int tick_budget = 0;  // sum of the per-waypoint budgets handed out
  bool complete = false;

  std::size_t replan_count() const;  // plans triggered by a blocked suffix
  std::size_t count(WaypointOutcome outcome) const;
  double executed_length() const;
  /// nullopt when the vehicle never moved.
  std::optional<Trajectory> executed_trajectory() const;
};

/// Sense, map, plan, move loop for one global path.
///
/// Each tick: move speed*tick along the current trajectory, recenter the grid
/// on the vehicle, sense, replan if the remaining trajectory now collides,
/// then retire the goal if it is within the arrival radius (or its budget
/// ran out).
class Mission {
 public:
  Mission(const Scene& scene, const PriorityMap& map, const GlobalPath& path,
          MissionConfig cfg);

  bool complete() const { return waypoints_.exhausted(); }
  void tick();

  /// Records `outcome` for the current goal and plans toward the next one,
  /// dropping any that turn out unreachable.
  void advance_goal(WaypointOutcome outcome);

  const MissionLog& log() const { return log_; }
  const Vec3& position() const { return position_; }
  const OccupancyGrid& grid() const { return grid_; }
  const std::optional<Trajectory>& trajectory() const { return trajectory_; }
  const WaypointList& waypoints() const { return waypoints_; }

 private:
  void activate_goal();
  bool plan(PlanReason reason);
  void sense();
  void record(double t);
  bool suffix_blocked() const;

  const Scene& scene_;
  const PriorityMap& map_;
  MissionConfig cfg_;
  WaypointList waypoints_;
  OccupancyGrid grid_;
  Vec3 position_;
  std::optional<Trajectory> trajectory_;
  double progress_ = 0.0;  // arc length flown on trajectory_
  int goal_deadline_ = 0;
  MissionLog log_;
};

MissionLog run_mission(const Scene& scene, const PriorityMap& map, const GlobalPath& path,
                       const MissionConfig& cfg);

}  // namespace ltp
