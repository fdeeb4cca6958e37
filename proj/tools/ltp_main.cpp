// ltp: plan one local trajectory, fly a mission, or run the benchmark.
//
// Exit codes: 0 success, 1 invalid input, 2 no trajectory found (plan).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ltp/bench.hpp>
#include <ltp/io.hpp>
#include <ltp/mission.hpp>
#include <ltp/penalty.hpp>
#include <ltp/planner.hpp>
#include <ltp/priority.hpp>
#include <ltp/scene.hpp>

namespace fs = std::filesystem;
using namespace ltp;

namespace {

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kNoPath = 2;

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Vec3 vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) throw InputError(std::string(what) + ": expected x,y,z");
  return {v[0], v[1], v[2]};
}

template <class F>
auto parse_file(const std::string& path, F&& reader) {
  std::istringstream in(io::read_file(path));
  return reader(in);
}

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

// Options shared by plan and mission for the ground priority map.
struct PriorityOptions {
  std::string mask;
  double resolution = 2.0;
  std::vector<double> origin{0.0, 0.0};
  std::string variant = "binary";
  double window = 0.0;  // <= 0: camera footprint at the flight height
  double fov_deg = 53.0;

  void add(CLI::App& app) {
    app.add_option("--mask", mask, "Ground mask (PGM or CSV, first row north)");
    app.add_option("--mask-res", resolution, "Mask cell size in meters")
        ->check(CLI::PositiveNumber);
    app.add_option("--mask-origin", origin, "South-west corner of the mask: x,y")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--priority", variant, "binary or lpf")
        ->check(CLI::IsMember({"binary", "lpf"}));
    app.add_option("--lpf-window", window, "Low-pass window side in meters");
    app.add_option("--fov", fov_deg, "Camera field of view in degrees");
  }

  PriorityMap build(double height) const {
    if (mask.empty()) return {};
    if (origin.size() != 2) throw InputError("--mask-origin: expected x,y");
    const GroundMask m = parse_file(mask, [&](std::istream& in) {
      return io::read_mask(in, resolution, Vec2{origin[0], origin[1]});
    });
    if (variant == "binary") return binary_priority(m);
    const double fov = fov_deg * std::numbers::pi / 180.0;
    const double w = window > 0.0 ? window : footprint_size(height, fov);
    return lpf_priority(m, w);
  }
};

// ---------------------------------------------------------------- plan

struct PlanArgs {
  std::string scene;
  std::vector<double> init, goal;
  std::string planner = "lp_dijkstra";
  std::string planner_config;
  std::optional<double> wl, wp, wastar;
  std::optional<bool> admissible;
  std::string z_band;
  std::vector<int> dims{200, 200, 40};
  std::vector<double> resolution{2.0, 2.0, 4.0};
  bool lidar = false;
  std::string out;
  std::optional<int> slice;
  std::string slice_out;
  PriorityOptions priority;
};

int run_plan(const PlanArgs& a) {
  const Scene scene = parse_file(a.scene, [](std::istream& in) { return io::read_scene(in); });
  const Vec3 init = vec3(a.init, "--init");
  const Vec3 goal = vec3(a.goal, "--goal");

  PlannerConfig cfg;
  if (!a.planner_config.empty()) cfg = io::planner_from_json_text(io::read_file(a.planner_config));
  if (!a.planner.empty()) {
    const auto kind = parse_planner(a.planner);
    if (!kind) throw InputError("unknown planner '" + a.planner + "'");
    cfg.kind = *kind;
  }
  if (a.wl) cfg.weights.length = *a.wl;
  if (a.wp) cfg.weights.priority = *a.wp;
  if (a.wastar) cfg.w_astar = *a.wastar;
  if (a.admissible) cfg.admissible_heuristic = *a.admissible;
  if (a.z_band == "full") {
    cfg.search.z_band.reset();
  } else if (!a.z_band.empty()) {
    cfg.search.z_band = std::stoi(a.z_band);
    if (*cfg.search.z_band < 0) throw InputError("--z-band must be >= 0 or 'full'");
  }
  cfg.weights.validate();

  if (a.dims.size() != 3 || a.resolution.size() != 3)
    throw InputError("--dims and --res take three values");
  GridSpec spec;
  spec.dims = {a.dims[0], a.dims[1], a.dims[2]};
  spec.resolution = {a.resolution[0], a.resolution[1], a.resolution[2]};
  spec.center = init;
  spec.validate();

  OccupancyGrid grid(spec);
  if (a.lidar) {
    grid = sense_and_update(scene, std::move(grid), SensorPose{init}, LidarConfig::standard());
  } else {
    mark_surfaces(scene, grid);
  }
  const PriorityMap map = a.priority.build(init.z() - scene.ground_z);

  if (a.slice) {
    if (*a.slice < 0 || *a.slice >= spec.dims.z()) throw InputError("--slice: layer out of range");
    if (a.slice_out.empty()) {
      write_slice_csv(grid, *a.slice, std::cout);
    } else {
      auto out = open_out(a.slice_out);
      write_slice_csv(grid, *a.slice, out);
    }
  }

  const PlanResult r = plan_local(cfg, init, goal, grid, map);
  std::fprintf(stderr, "planner %s\n", std::string(to_string(cfg.kind)).c_str());
  std::fprintf(stderr, "expansions %zu\nruntime_ms %.3f\n", r.expansions, r.runtime_s * 1e3);
  if (!r.reached()) {
    std::fprintf(stderr, "result unreachable\n");
    return kNoPath;
  }
  const PenaltyBreakdown p = total_penalty(*r.trajectory, grid, map, cfg.weights, init, goal);
  std::fprintf(stderr, "result reached\nlength %.6f\nlength_ratio %.6f\nmean_priority %.6f\n",
               p.length, p.eps1, -p.eps2);
  if (a.out.empty()) {
    io::write_trajectory_csv(*r.trajectory, std::cout);
  } else {
    auto out = open_out(a.out);
    io::write_trajectory_csv(*r.trajectory, out);
  }
  return kOk;
}

// ------------------------------------------------------------- mission

struct MissionArgs {
  std::string scene, path, config, log, csv;
  PriorityOptions priority;
};

int run_mission_cmd(const MissionArgs& a) {
  const Scene scene = parse_file(a.scene, [](std::istream& in) { return io::read_scene(in); });
  const GlobalPath path = parse_file(a.path, [](std::istream& in) { return io::read_path(in); });
  MissionConfig cfg;
  if (!a.config.empty())
    cfg = parse_file(a.config, [](std::istream& in) { return io::read_mission_config(in); });
  cfg.validate();
  const PriorityMap map = a.priority.build(path.start.z() - scene.ground_z);

  const MissionLog log = run_mission(scene, map, path, cfg);
  if (a.log.empty()) {
    io::write_mission_log_json(log, std::cout);
  } else {
    auto out = open_out(a.log);
    io::write_mission_log_json(log, out);
  }
  if (!a.csv.empty()) {
    auto out = open_out(a.csv);
    io::write_mission_path_csv(log, out);
  }
  std::fprintf(stderr, "ticks %d/%d reached %zu unreachable %zu timeout %zu replans %zu\n",
               log.ticks, log.tick_budget, log.count(WaypointOutcome::reached),
               log.count(WaypointOutcome::dropped_unreachable),
               log.count(WaypointOutcome::dropped_timeout), log.replan_count());
  return kOk;
}

// --------------------------------------------------------- bench, sweep

struct BenchArgs {
  std::string spec;
  std::string out_dir = "bench_out";
  std::optional<int> threads;
  bool no_runtime = false;
  std::vector<double> ratios;
  std::string planner = "lp_dijkstra";
};

BenchmarkSpec load_spec(const BenchArgs& a) {
  BenchmarkSpec spec;
  if (!a.spec.empty())
    spec = parse_file(a.spec, [](std::istream& in) { return io::read_bench_spec(in); });
  else
    spec.rows = planner_rows(PenaltyWeights{1.0, 2.0});
  if (a.threads) spec.threads = *a.threads;
  return spec;
}

int write_bench(const BenchmarkSpec& spec, const BenchArgs& a) {
  spec.validate();
  const BenchmarkReport report = run_benchmark(spec);
  const bool runtime = !a.no_runtime;
  const fs::path dir(a.out_dir);
  {
    auto out = open_out(dir / "summary.csv");
    write_summary_csv(report, out, runtime);
  }
  {
    auto out = open_out(dir / "missions.csv");
    write_missions_csv(report, out, runtime);
  }
  {
    auto out = open_out(dir / "report.json");
    io::write_report_json(report, spec, out, runtime);
  }
  write_summary_csv(report, std::cout, runtime);
  return kOk;
}

int run_bench(const BenchArgs& a) { return write_bench(load_spec(a), a); }

int run_sweep(const BenchArgs& a) {
  BenchmarkSpec spec = load_spec(a);
  const auto kind = parse_planner(a.planner);
  if (!kind || *kind == PlannerKind::bezier || *kind == PlannerKind::ggwp)
    throw InputError("--planner must be an LP search for a sweep");
  spec.rows = sweep_rows(a.ratios, *kind);
  return write_bench(spec, a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local trajectory planning with ground priority"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Plan one local trajectory on a sensed grid");
  p->add_option("--scene", plan.scene, "Scene JSON")->required();
  p->add_option("--init", plan.init, "Start x,y,z")->required()->delimiter(',')->expected(3);
  p->add_option("--goal", plan.goal, "Goal x,y,z")->required()->delimiter(',')->expected(3);
  p->add_option("--planner", plan.planner, "bezier, ggwp, lp_dijkstra, lp_astar or wlp_astar");
  p->add_option("--planner-config", plan.planner_config, "Planner JSON; flags override it");
  p->add_option("--wl", plan.wl, "Length weight");
  p->add_option("--wp", plan.wp, "Priority weight");
  p->add_option("--wastar", plan.wastar, "Heuristic weight");
  p->add_option("--admissible-h", plan.admissible, "Scale the heuristic by the length weight");
  p->add_option("--z-band", plan.z_band, "Vertical freedom in cells, or 'full'");
  p->add_option("--dims", plan.dims, "Grid cells nx,ny,nz")->delimiter(',')->expected(3);
  p->add_option("--res", plan.resolution, "Cell size rx,ry,rz")->delimiter(',')->expected(3);
  p->add_flag("--lidar", plan.lidar, "Map with one lidar scan instead of every surface");
  p->add_option("--out", plan.out, "Trajectory CSV (stdout when omitted)");
  p->add_option("--slice", plan.slice, "Also dump this grid layer");
  p->add_option("--slice-out", plan.slice_out, "File for --slice (stdout when omitted)");
  plan.priority.add(*p);

  MissionArgs mission;
  auto* m = app.add_subcommand("mission", "Fly a global path with replanning");
  m->add_option("--scene", mission.scene, "Scene JSON")->required();
  m->add_option("--path", mission.path, "Global path, JSON or CSV")->required();
  m->add_option("--config", mission.config, "Mission JSON");
  m->add_option("--log", mission.log, "Mission log JSON (stdout when omitted)");
  m->add_option("--csv", mission.csv, "Executed path as t,x,y,z");
  mission.priority.add(*m);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run the benchmark and write summary/missions/report");
  b->add_option("--spec", bench.spec, "Benchmark JSON (all five planners when omitted)");
  b->add_option("--out-dir", bench.out_dir, "Output directory");
  b->add_option("--threads", bench.threads, "Worker threads");
  b->add_flag("--no-runtime", bench.no_runtime, "Leave timing columns out");

  BenchArgs sweep;
  sweep.ratios = {0.0, 0.5, 1.0, 2.0, 5.0};
  sweep.out_dir = "sweep_out";
  auto* s = app.add_subcommand("sweep", "Benchmark an LP planner over W_p/W_L ratios");
  s->add_option("--spec", sweep.spec, "Benchmark JSON; its rows are replaced");
  s->add_option("--ratios", sweep.ratios, "Comma separated W_p/W_L values")->delimiter(',');
  s->add_option("--planner", sweep.planner, "lp_dijkstra, lp_astar or wlp_astar");
  s->add_option("--out-dir", sweep.out_dir, "Output directory");
  s->add_option("--threads", sweep.threads, "Worker threads");
  s->add_flag("--no-runtime", sweep.no_runtime, "Leave timing columns out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*p) return run_plan(plan);
    if (*m) return run_mission_cmd(mission);
    if (*b) return run_bench(bench);
    if (*s) return run_sweep(sweep);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  }
  return kBadInput;
}
