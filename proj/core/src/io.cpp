#include "ltp/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace ltp::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument(what); }

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

template <int N>
Eigen::Matrix<double, N, 1> vec(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N) bad(std::string(what) + ": expected array of " + std::to_string(N));
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    if (!j[i].is_number()) bad(std::string(what) + ": expected numbers");
    v[i] = j[i].get<double>();
    if (!std::isfinite(v[i])) bad(std::string(what) + ": non-finite value");
  }
  return v;
}

json arr(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json arr(const Vec2& v) { return json::array({v.x(), v.y()}); }

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (!j.contains(key) || j[key].is_null()) return;
  try {
    out = j[key].get<T>();
  } catch (const json::exception& e) {
    bad(std::string("bad value for '") + key + "': " + e.what());
  }
}

double deg(double d) { return d * std::numbers::pi / 180.0; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

PlannerConfig planner_from(const json& j) {
  PlannerConfig cfg;
  if (!j.is_object()) bad("planner: expected object");
  if (j.contains("kind")) {
    const auto kind = parse_planner(j["kind"].get<std::string>());
    if (!kind) bad("unknown planner '" + j["kind"].get<std::string>() + "'");
    cfg.kind = *kind;
  }
  get_if(j, "w_l", cfg.weights.length);
  get_if(j, "w_p", cfg.weights.priority);
  if (j.contains("w_astar") && !j["w_astar"].is_null()) cfg.w_astar = j["w_astar"].get<double>();
  if (j.contains("admissible_heuristic") && !j["admissible_heuristic"].is_null())
    cfg.admissible_heuristic = j["admissible_heuristic"].get<bool>();
  if (j.contains("z_band")) {
    if (j["z_band"].is_null())
      cfg.search.z_band.reset();
    else
      cfg.search.z_band = j["z_band"].get<int>();
  }
  if (j.contains("bezier")) {
    const json& b = j["bezier"];
    get_if(b, "lateral_offsets", cfg.bezier.lateral_offsets);
    get_if(b, "z_offsets", cfg.bezier.z_offsets);
    get_if(b, "samples", cfg.bezier.samples);
    cfg.bezier.validate();
  }
  cfg.weights.validate();
  return cfg;
}

LidarConfig lidar_from(const json& j) {
  int az = 360, el = 9;
  double lo = -30.0, hi = 30.0, range = 50.0;
  get_if(j, "azimuths", az);
  get_if(j, "elevations", el);
  get_if(j, "min_elevation_deg", lo);
  get_if(j, "max_elevation_deg", hi);
  get_if(j, "range", range);
  if (az < 1 || el < 1) bad("lidar: lattice sizes must be >= 1");
  if (!(range > 0.0)) bad("lidar: range must be > 0");
  return LidarConfig::lattice(az, el, deg(lo), deg(hi), range);
}

GridSpec grid_from(const json& j) {
  GridSpec spec;
  if (j.contains("dims")) {
    const auto d = vec<3>(j["dims"], "grid.dims");
    spec.dims = d.array().round().cast<int>().matrix();
  }
  if (j.contains("resolution")) spec.resolution = vec<3>(j["resolution"], "grid.resolution");
  spec.validate();
  return spec;
}

MissionConfig mission_from(const json& j) {
  MissionConfig cfg;
  if (!j.is_object()) bad("mission config: expected object");
  get_if(j, "speed", cfg.speed);
  get_if(j, "tick", cfg.tick);
  get_if(j, "arrival_radius", cfg.arrival_radius);
  get_if(j, "budget_factor", cfg.budget_factor);
  if (j.contains("z_band")) {
    if (j["z_band"].is_null())
      cfg.z_band.reset();
    else
      cfg.z_band = j["z_band"].get<int>();
  }
  if (j.contains("planner")) cfg.planner = planner_from(j["planner"]);
  if (j.contains("lidar")) cfg.lidar = lidar_from(j["lidar"]);
  if (j.contains("grid")) cfg.grid = grid_from(j["grid"]);
  cfg.validate();
  return cfg;
}

Bounds2 bounds_from(const json& j) {
  if (!j.is_object() || !j.contains("min") || !j.contains("max")) bad("bounds: expected {min, max}");
  Bounds2 b{vec<2>(j["min"], "bounds.min"), vec<2>(j["max"], "bounds.max")};
  if ((b.max.array() <= b.min.array()).any()) bad("bounds: max must exceed min");
  return b;
}

json log_to_json(const MissionLog& log) {
  json j;
  j["ticks"] = log.ticks;
  j["tick_budget"] = log.tick_budget;
  j["complete"] = log.complete;
  j["executed_length"] = log.executed_length();
  json outcomes = json::array();
  for (std::size_t i = 0; i < log.outcomes.size(); ++i) {
    outcomes.push_back({{"waypoint", i},
                        {"outcome", std::string(to_string(log.outcomes[i]))},
                        {"tick", log.outcome_ticks[i]}});
  }
  j["outcomes"] = outcomes;
  json plans = json::array();
  for (const auto& p : log.plans) {
    plans.push_back({{"tick", p.tick},
                     {"reason", std::string(to_string(p.reason))},
                     {"waypoint", p.waypoint},
                     {"from", arr(p.from)},
                     {"success", p.success},
                     {"escaped", p.escaped},
                     {"runtime_ms", p.runtime_s * 1e3},
                     {"expansions", p.expansions}});
  }
  j["plans"] = plans;
  j["replans"] = log.replan_count();
  return j;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scene read_scene(std::istream& in) {
  const json j = parse(in);
  if (!j.is_object()) bad("scene: expected object");
  Scene scene;
  get_if(j, "ground_z", scene.ground_z);
  if (j.contains("bounds")) scene.bounds = bounds_from(j["bounds"]);
  if (j.contains("boxes")) {
    if (!j["boxes"].is_array()) bad("scene.boxes: expected array");
    for (const auto& b : j["boxes"]) {
      if (!b.is_object() || !b.contains("min") || !b.contains("max")) bad("box: expected {min, max}");
      scene.boxes.push_back(Box{vec<3>(b["min"], "box.min"), vec<3>(b["max"], "box.max")});
    }
  }
  if (!j.contains("bounds")) {
    // Default bounds: the boxes' footprint hull, or empty.
    for (std::size_t i = 0; i < scene.boxes.size(); ++i) {
      const Vec2 lo = scene.boxes[i].min.head<2>(), hi = scene.boxes[i].max.head<2>();
      scene.bounds.min = i ? scene.bounds.min.cwiseMin(lo) : lo;
      scene.bounds.max = i ? scene.bounds.max.cwiseMax(hi) : hi;
    }
  }
  scene.validate();
  return scene;
}

void write_scene(const Scene& scene, std::ostream& out) {
  json j;
  j["ground_z"] = scene.ground_z;
  j["bounds"] = {{"min", arr(scene.bounds.min)}, {"max", arr(scene.bounds.max)}};
  json boxes = json::array();
  for (const auto& b : scene.boxes) boxes.push_back({{"min", arr(b.min)}, {"max", arr(b.max)}});
  j["boxes"] = boxes;
  out << j.dump(1) << '\n';
}

GlobalPath read_path(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) bad("path: empty input");
  GlobalPath path;
  if (text[first] == '{') {
    std::istringstream ss(text);
    const json j = parse(ss);
    if (!j.contains("start") || !j.contains("waypoints")) bad("path: expected {start, waypoints}");
    path.start = vec<3>(j["start"], "path.start");
    if (!j["waypoints"].is_array()) bad("path.waypoints: expected array");
    for (const auto& w : j["waypoints"]) path.waypoints.points.push_back(vec<3>(w, "waypoint"));
  } else {
    std::istringstream ss(text);
    std::string line;
    std::vector<Vec3> pts;
    while (std::getline(ss, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (std::isalpha(static_cast<unsigned char>(line[line.find_first_not_of(" \t")]))) continue;
      Vec3 p;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.x(), &p.y(), &p.z()) != 3)
        bad("path CSV: bad row '" + line + "'");
      if (!p.allFinite()) bad("path CSV: non-finite value");
      pts.push_back(p);
    }
    if (pts.empty()) bad("path CSV: no rows");
    path.start = pts.front();
    path.waypoints.points.assign(pts.begin() + 1, pts.end());
  }
  if (path.waypoints.points.empty()) bad("path: no waypoints");
  return path;
}

void write_path(const GlobalPath& path, std::ostream& out) {
  json j;
  j["start"] = arr(path.start);
  json w = json::array();
  for (const auto& p : path.waypoints.points) w.push_back(arr(p));
  j["waypoints"] = w;
  out << j.dump(1) << '\n';
}

MissionConfig read_mission_config(std::istream& in) { return mission_from(parse(in)); }

PlannerConfig planner_from_json_text(const std::string& text) {
  std::istringstream ss(text);
  return planner_from(parse(ss));
}

BenchmarkSpec read_bench_spec(std::istream& in) {
  const json j = parse(in);
  if (!j.is_object()) bad("bench spec: expected object");
  BenchmarkSpec spec;
  get_if(j, "seed", spec.seed);
  get_if(j, "n_paths", spec.n_paths);
  get_if(j, "path_length", spec.path_length);
  get_if(j, "altitude", spec.altitude);
  get_if(j, "waypoint_spacing", spec.waypoint_spacing);
  get_if(j, "threads", spec.threads);
  if (j.contains("heading_deg") && !j["heading_deg"].is_null())
    spec.heading = deg(j["heading_deg"].get<double>());
  if (j.contains("camera_fov_deg")) spec.camera_fov = deg(j["camera_fov_deg"].get<double>());
  if (j.contains("priority")) {
    const auto v = parse_priority_variant(j["priority"].get<std::string>());
    if (!v) bad("priority: expected 'binary' or 'lpf'");
    spec.priority = *v;
  }
  if (j.contains("scene")) {
    const json& s = j["scene"];
    if (s.contains("bounds")) spec.scene.bounds = bounds_from(s["bounds"]);
    get_if(s, "ground_z", spec.scene.ground_z);
    get_if(s, "density_per_km2", spec.scene.density_per_km2);
    get_if(s, "min_footprint", spec.scene.min_footprint);
    get_if(s, "max_footprint", spec.scene.max_footprint);
    get_if(s, "min_height", spec.scene.min_height);
    get_if(s, "max_height", spec.scene.max_height);
    get_if(s, "street_gap", spec.scene.street_gap);
  }
  if (j.contains("mask")) {
    const json& m = j["mask"];
    get_if(m, "resolution", spec.mask.resolution);
    get_if(m, "regions_per_km2", spec.mask.regions_per_km2);
    get_if(m, "min_size", spec.mask.min_size);
    get_if(m, "max_size", spec.mask.max_size);
  }
  if (j.contains("mission")) spec.mission = mission_from(j["mission"]);
  if (j.contains("rows")) {
    if (!j["rows"].is_array()) bad("rows: expected array");
    for (const auto& r : j["rows"]) {
      BenchmarkRow row;
      row.planner = planner_from(r);
      row.name = r.contains("name") ? r["name"].get<std::string>() : std::string(to_string(row.planner.kind));
      spec.rows.push_back(std::move(row));
    }
  } else {
    spec.rows = planner_rows(PenaltyWeights{});
  }
  spec.validate();
  return spec;
}

GroundMask read_mask(std::istream& in, double resolution, const Vec2& origin) {
  if (!(resolution > 0.0)) bad("mask resolution must be > 0");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::vector<std::uint8_t>> rows;  // file order, north first

  if (text.size() >= 2 && text[0] == 'P' && (text[1] == '2' || text[1] == '5')) {
    const bool binary = text[1] == '5';
    std::size_t pos = 2;
    auto next_token = [&]() -> long {
      while (pos < text.size()) {
        if (text[pos] == '#') {
          while (pos < text.size() && text[pos] != '\n') ++pos;
        } else if (std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        } else {
          break;
        }
      }
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == pos) bad("PGM: expected integer");
      const long v = std::stol(text.substr(pos, end - pos));
      pos = end;
      return v;
    };
    const long w = next_token(), h = next_token(), maxval = next_token();
    if (w < 1 || h < 1 || maxval < 1 || maxval > 65535) bad("PGM: bad header");
    const bool wide = maxval > 255;
    rows.assign(static_cast<std::size_t>(h), std::vector<std::uint8_t>(static_cast<std::size_t>(w)));
    if (binary) ++pos;  // single whitespace after maxval
    for (long y = 0; y < h; ++y)
      for (long x = 0; x < w; ++x) {
        long v;
        if (binary) {
          const std::size_t need = wide ? 2 : 1;
          if (pos + need > text.size()) bad("PGM: truncated data");
          v = static_cast<unsigned char>(text[pos]);
          if (wide) v = (v << 8) | static_cast<unsigned char>(text[pos + 1]);
          pos += need;
        } else {
          v = next_token();
        }
        if (v > maxval) bad("PGM: value above maxval");
        rows[y][x] = 2 * v > maxval ? 1 : 0;
      }
  } else {
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::vector<std::uint8_t> row;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        if (b == std::string::npos) bad("mask CSV: empty cell");
        const std::string t = cell.substr(b, e - b + 1);
        if (t == "0") row.push_back(0);
        else if (t == "1") row.push_back(1);
        else bad("mask CSV: values must be 0 or 1, got '" + t + "'");
      }
      if (!rows.empty() && row.size() != rows.front().size()) bad("mask CSV: ragged rows");
      rows.push_back(std::move(row));
    }
    if (rows.empty()) bad("mask CSV: no rows");
  }

  const int ny = static_cast<int>(rows.size());
  const int nx = static_cast<int>(rows.front().size());
  GroundMask mask(nx, ny, resolution, origin, 0);
  for (int r = 0; r < ny; ++r)
    for (int x = 0; x < nx; ++x) mask.set(x, ny - 1 - r, rows[r][x]);
  return mask;
}

void write_mask_csv(const GroundMask& mask, std::ostream& out) {
  for (int iy = mask.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < mask.nx; ++ix) out << (ix ? "," : "") << int(mask.at(ix, iy));
    out << '\n';
  }
}

void write_priority_csv(const PriorityMap& map, std::ostream& out) {
  for (int iy = map.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < map.nx(); ++ix) out << (ix ? "," : "") << num(map.at(ix, iy));
    out << '\n';
  }
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "x,y,z\n";
  for (const auto& p : traj.points()) out << num(p.x()) << ',' << num(p.y()) << ',' << num(p.z()) << '\n';
}

void write_mission_path_csv(const MissionLog& log, std::ostream& out) {
  out << "t,x,y,z\n";
  for (std::size_t i = 0; i < log.executed.size(); ++i) {
    const auto& p = log.executed[i];
    out << num(log.times[i]) << ',' << num(p.x()) << ',' << num(p.y()) << ',' << num(p.z()) << '\n';
  }
}

void write_mission_log_json(const MissionLog& log, std::ostream& out) {
  out << log_to_json(log).dump(1) << '\n';
}

void write_report_json(const BenchmarkReport& report, const BenchmarkSpec& spec, std::ostream& out,
                       bool include_runtime) {
  json j;
  j["seed"] = spec.seed;
  j["n_paths"] = spec.n_paths;
  j["path_length"] = spec.path_length;
  j["altitude"] = spec.altitude;
  j["priority"] = std::string(to_string(spec.priority));
  j["length_ratio_definition"] =
      "executed length up to the last reached waypoint over the polyline from the start through "
      "the reached waypoints; dropped waypoints excluded";
  j["std_definition"] = "sample standard deviation (n - 1)";
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"name", r.name},
                {"planner", std::string(to_string(r.kind))},
                {"w_l", r.weights.length},
                {"w_p", r.weights.priority},
                {"missions", r.missions},
                {"failures", r.failures},
                {"priority", {{"mean", r.priority.mean}, {"std", r.priority.std}, {"n", r.priority.n}}},
                {"length_ratio",
                 {{"mean", r.length_ratio.mean}, {"std", r.length_ratio.std}, {"n", r.length_ratio.n}}},
                {"plans", r.plans},
                {"collisions", r.collisions},
                {"budget_overruns", r.budget_overruns}};
    if (include_runtime) row["runtime_ms_mean"] = r.mean_runtime_s * 1e3;
    rows.push_back(row);
  }
  j["rows"] = rows;
  json missions = json::array();
  for (const auto& m : report.missions) {
    json rec = {{"row", m.row},
                {"path", m.path},
                {"ok", m.ok},
                {"mean_priority", m.mean_priority},
                {"length_ratio", m.has_ratio ? json(m.length_ratio) : json(nullptr)},
                {"plans", m.plans},
                {"replans", m.replans},
                {"reached", m.reached},
                {"dropped_unreachable", m.dropped_unreachable},
                {"dropped_timeout", m.dropped_timeout},
                {"ticks", m.ticks},
                {"tick_budget", m.tick_budget},
                {"collision", m.collision}};
    if (!m.error.empty()) rec["error"] = m.error;
    if (include_runtime) rec["runtime_ms_mean"] = m.mean_runtime_s * 1e3;
    missions.push_back(rec);
  }
  j["missions"] = missions;
  out << j.dump(1) << '\n';
}

}  // namespace ltp::io
