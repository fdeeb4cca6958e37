#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ltp/bench.hpp"
#include "ltp/mission.hpp"
#include "ltp/occupancy.hpp"
#include "ltp/priority.hpp"
#include "ltp/scene.hpp"
#include "ltp/trajectory.hpp"

// All readers throw std::invalid_argument on malformed input.
namespace ltp::io {

/// {"ground_z": 0, "bounds": {"min": [x, y], "max": [x, y]},
///  "boxes": [{"min": [x, y, z], "max": [x, y, z]}, ...]}
Scene read_scene(std::istream& in);
void write_scene(const Scene& scene, std::ostream& out);

/// JSON {"start": [x, y, z], "waypoints": [[x, y, z], ...]}, or CSV rows
/// x,y,z with the start on the first row. Chosen by the first non-blank
/// character.
GlobalPath read_path(std::istream& in);
void write_path(const GlobalPath& path, std::ostream& out);

/// Missing keys keep their defaults.
MissionConfig read_mission_config(std::istream& in);
PlannerConfig planner_from_json_text(const std::string& text);

BenchmarkSpec read_bench_spec(std::istream& in);

/// PGM (P2 or P5) or CSV of 0/1. The first row of the file is the northern
/// edge (largest y). PGM pixels above half of maxval count as 1.
GroundMask read_mask(std::istream& in, double resolution, const Vec2& origin);
void write_mask_csv(const GroundMask& mask, std::ostream& out);
void write_priority_csv(const PriorityMap& map, std::ostream& out);

/// x,y,z rows with a header.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

/// t,x,y,z samples of the executed path.
void write_mission_path_csv(const MissionLog& log, std::ostream& out);
void write_mission_log_json(const MissionLog& log, std::ostream& out);

void write_report_json(const BenchmarkReport& report, const BenchmarkSpec& spec,
                       std::ostream& out, bool include_runtime);

/// Opens a file or throws std::invalid_argument naming it.
std::string read_file(const std::filesystem::path& path);

}  // namespace ltp::io
