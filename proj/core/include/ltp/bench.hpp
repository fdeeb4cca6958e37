#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ltp/mission.hpp"
#include "ltp/planner.hpp"
#include "ltp/priority.hpp"
#include "ltp/scene.hpp"

namespace ltp {

enum class PriorityVariant { binary, lpf };
std::string_view to_string(PriorityVariant v);
std::optional<PriorityVariant> parse_priority_variant(std::string_view name);

/// Random rectangular landing regions, minus building footprints.
struct MaskParams {
  double resolution = 2.0;
  double regions_per_km2 = 80.0;
  double min_size = 20.0;
  double max_size = 100.0;
};

struct BenchmarkRow {
  std::string name;
  PlannerConfig planner;
};

struct BenchmarkSpec {
  std::uint64_t seed = 1;
  int n_paths = 50;
  double path_length = 500.0;
  double altitude = 50.0;
  double waypoint_spacing = 50.0;
  /// Fixed heading in radians for every path; random when unset.
  std::optional<double> heading;
  PriorityVariant priority = PriorityVariant::binary;
  double camera_fov = 53.0 * 3.14159265358979323846 / 180.0;
  std::vector<BenchmarkRow> rows;
  SceneParams scene;
  MaskParams mask;
  MissionConfig mission;  // planner field is replaced per row
  int threads = 1;

  void validate() const;
};

struct Scenario {
  Scene scene;
  GroundMask mask;
  PriorityMap map;
  std::vector<GlobalPath> paths;
};

/// Straight paths of spec.path_length at spec.altitude, fully inside the
/// scene bounds, with waypoints every waypoint_spacing meters (the last one
/// at the path end). Starts inside a box are rejected.
std::vector<GlobalPath> generate_global_paths(std::uint64_t seed, const BenchmarkSpec& spec,
                                              const Scene& scene);

GroundMask generate_ground_mask(std::uint64_t seed, const Scene& scene, const MaskParams& params);

/// Scene, mask, priority map and paths for a spec, all derived from spec.seed.
Scenario make_scenario(const BenchmarkSpec& spec);

/// (integral of p dl) / L along the trajectory, i.e. -eps2.
double mean_priority(const Trajectory& traj, const PriorityMap& map);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for fewer than 2 values
  std::size_t n = 0;
};

/// Single-pass (Welford) mean and sample standard deviation.
MeanStd mean_std(std::span<const double> values);

struct MissionRecord {
  std::size_t row = 0;
  std::size_t path = 0;
  bool ok = false;  // false when the mission threw
  std::string error;
  bool has_ratio = false;  // at least one waypoint reached and the UAV moved
  double mean_priority = 0.0;
  double length_ratio = 0.0;
  double executed_length = 0.0;
  double global_length = 0.0;
  double mean_runtime_s = 0.0;
  std::size_t plans = 0;
  std::size_t replans = 0;
  std::size_t reached = 0;
  std::size_t dropped_unreachable = 0;
  std::size_t dropped_timeout = 0;
  int ticks = 0;
  int tick_budget = 0;
  bool complete = false;
  bool collision = false;  // executed path entered a ground-truth box
};

/// Per-mission statistics. The length ratio compares the executed path up
/// to the last reached waypoint against the polyline from the start through
/// the reached waypoints; dropped waypoints are left out of both.
MissionRecord evaluate_mission(const MissionLog& log, const GlobalPath& path, const Scene& scene,
                               const PriorityMap& map);

struct RowSummary {
  std::string name;
  PlannerKind kind = PlannerKind::lp_dijkstra;
  PenaltyWeights weights;
  MeanStd priority;
  MeanStd length_ratio;
  double mean_runtime_s = 0.0;  // over all plan calls of the row
  std::size_t plans = 0;
  std::size_t missions = 0;
  std::size_t failures = 0;
  std::size_t collisions = 0;
  std::size_t budget_overruns = 0;
};

struct BenchmarkReport {
  std::vector<RowSummary> rows;
  std::vector<MissionRecord> missions;  // ordered by (row, path)
};

BenchmarkReport run_benchmark(const BenchmarkSpec& spec);
BenchmarkReport run_benchmark(const BenchmarkSpec& spec, const Scenario& scenario);

/// LP rows with W_L = 1 and W_p = ratio.
std::vector<BenchmarkRow> sweep_rows(std::span<const double> ratios,
                                     PlannerKind kind = PlannerKind::lp_dijkstra);

/// The five planners with the given weights.
std::vector<BenchmarkRow> planner_rows(const PenaltyWeights& weights);

void write_summary_csv(const BenchmarkReport& report, std::ostream& out, bool include_runtime);
void write_missions_csv(const BenchmarkReport& report, std::ostream& out, bool include_runtime);

}  // namespace ltp
