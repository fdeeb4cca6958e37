#include "ltp/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>
#include <thread>

#include "ltp/penalty.hpp"

namespace ltp {

std::string_view to_string(PriorityVariant v) {
  return v == PriorityVariant::binary ? "binary" : "lpf";
}

std::optional<PriorityVariant> parse_priority_variant(std::string_view name) {
  if (name == "binary") return PriorityVariant::binary;
  if (name == "lpf") return PriorityVariant::lpf;
  return std::nullopt;
}

void BenchmarkSpec::validate() const {
  if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (!(path_length > 0.0)) throw std::invalid_argument("path_length must be > 0");
  if (!(waypoint_spacing > 0.0)) throw std::invalid_argument("waypoint_spacing must be > 0");
  if (!std::isfinite(altitude)) throw std::invalid_argument("altitude must be finite");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(mask.resolution > 0.0)) throw std::invalid_argument("mask resolution must be > 0");
  if (mask.min_size <= 0.0 || mask.max_size < mask.min_size)
    throw std::invalid_argument("bad mask region sizes");
  for (const auto& row : rows) row.planner.weights.validate();
  mission.validate();
  (void)footprint_size(altitude, camera_fov);
}

namespace {

bool near_box(const Scene& scene, const Vec3& p, double margin) {
  for (const auto& b : scene.boxes) {
    if ((p.array() > b.min.array() - margin).all() && (p.array() < b.max.array() + margin).all())
      return true;
  }
  return false;
}

}  // namespace

std::vector<GlobalPath> generate_global_paths(std::uint64_t seed, const BenchmarkSpec& spec,
                                              const Scene& scene) {
  spec.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double margin = spec.mission.grid.resolution.maxCoeff();

  std::vector<GlobalPath> paths;
  paths.reserve(static_cast<std::size_t>(spec.n_paths));
  for (int k = 0; k < spec.n_paths; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
      const double heading = spec.heading ? *spec.heading : 2.0 * std::numbers::pi * unit(rng);
      const Vec2 dir(std::cos(heading), std::sin(heading));
      const Vec2 delta = spec.path_length * dir;
      const Vec2 lo = scene.bounds.min - delta.cwiseMin(Vec2::Zero());
      const Vec2 hi = scene.bounds.max - delta.cwiseMax(Vec2::Zero());
      if ((lo.array() > hi.array()).any())
        throw std::invalid_argument("path does not fit inside the scene bounds");
      const Vec2 s2 = lo + (hi - lo).cwiseProduct(Vec2(unit(rng), unit(rng)));
      const Vec3 start(s2.x(), s2.y(), spec.altitude);
      if (near_box(scene, start, margin)) continue;

      GlobalPath path;
      path.start = start;
      const Vec3 d3(dir.x(), dir.y(), 0.0);
      const int n = static_cast<int>(std::ceil(spec.path_length / spec.waypoint_spacing - 1e-9));
      for (int i = 1; i <= n; ++i) {
        const double s = std::min(i * spec.waypoint_spacing, spec.path_length);
        path.waypoints.points.push_back(start + s * d3);
      }
      paths.push_back(std::move(path));
      placed = true;
    }
    if (!placed) throw std::invalid_argument("could not place a path start outside the boxes");
  }
  return paths;
}

GroundMask generate_ground_mask(std::uint64_t seed, const Scene& scene, const MaskParams& params) {
  const Vec2 ext = scene.bounds.extent();
  const int nx = std::max(1, static_cast<int>(std::ceil(ext.x() / params.resolution)));
  const int ny = std::max(1, static_cast<int>(std::ceil(ext.y() / params.resolution)));
  GroundMask mask(nx, ny, params.resolution, scene.bounds.min, 0);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(scene.bounds.min.x(), scene.bounds.max.x());
  std::uniform_real_distribution<double> uy(scene.bounds.min.y(), scene.bounds.max.y());
  std::uniform_real_distribution<double> us(params.min_size, params.max_size);
  const auto count = static_cast<int>(std::lround(params.regions_per_km2 * ext.x() * ext.y() / 1e6));

  auto cell_range = [&](double a, double b, double o, int n) {
    const int i0 = std::clamp(static_cast<int>(std::floor((a - o) / params.resolution + 0.5)), 0, n);
    const int i1 = std::clamp(static_cast<int>(std::floor((b - o) / params.resolution + 0.5)), 0, n);
    return std::pair{i0, i1};
  };

  for (int r = 0; r < count; ++r) {
    const double cx = ux(rng), cy = uy(rng), w = us(rng), h = us(rng);
    const auto [x0, x1] = cell_range(cx - w / 2, cx + w / 2, mask.origin.x(), nx);
    const auto [y0, y1] = cell_range(cy - h / 2, cy + h / 2, mask.origin.y(), ny);
    for (int iy = y0; iy < y1; ++iy)
      for (int ix = x0; ix < x1; ++ix) mask.set(ix, iy, 1);
  }
  // Roofs are not landing sites.
  for (const auto& b : scene.boxes) {
    const auto [x0, x1] = cell_range(b.min.x(), b.max.x(), mask.origin.x(), nx);
    const auto [y0, y1] = cell_range(b.min.y(), b.max.y(), mask.origin.y(), ny);
    for (int iy = y0; iy < y1; ++iy)
      for (int ix = x0; ix < x1; ++ix) mask.set(ix, iy, 0);
  }
  return mask;
}

Scenario make_scenario(const BenchmarkSpec& spec) {
  spec.validate();
  Scenario sc;
  // Independent streams for scene, mask and paths.
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)};
  std::array<std::uint64_t, 3> seeds{};
  {
    std::array<std::uint32_t, 6> words{};
    seq.generate(words.begin(), words.end());
    for (std::size_t i = 0; i < 3; ++i)
      seeds[i] = (static_cast<std::uint64_t>(words[2 * i]) << 32) | words[2 * i + 1];
  }
  sc.scene = generate_scene(seeds[0], spec.scene);
  sc.mask = generate_ground_mask(seeds[1], sc.scene, spec.mask);
  sc.map = spec.priority == PriorityVariant::binary
               ? binary_priority(sc.mask)
               : lpf_priority(sc.mask, footprint_size(spec.altitude, spec.camera_fov));
  sc.paths = generate_global_paths(seeds[2], spec, sc.scene);
  return sc;
}

double mean_priority(const Trajectory& traj, const PriorityMap& map) { return -eps2(traj, map); }

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  double m2 = 0.0;
  for (double v : values) {
    ++out.n;
    const double d = v - out.mean;
    out.mean += d / static_cast<double>(out.n);
    m2 += d * (v - out.mean);
  }
  out.std = out.n > 1 ? std::sqrt(std::max(0.0, m2 / static_cast<double>(out.n - 1))) : 0.0;
  return out;
}

MissionRecord evaluate_mission(const MissionLog& log, const GlobalPath& path, const Scene& scene,
                               const PriorityMap& map) {
  MissionRecord rec;
  rec.ok = true;
  rec.plans = log.plans.size();
  rec.replans = log.replan_count();
  rec.reached = log.count(WaypointOutcome::reached);
  rec.dropped_unreachable = log.count(WaypointOutcome::dropped_unreachable);
  rec.dropped_timeout = log.count(WaypointOutcome::dropped_timeout);
  rec.ticks = log.ticks;
  rec.tick_budget = log.tick_budget;
  rec.complete = log.complete;
  double runtime = 0.0;
  for (const auto& p : log.plans) runtime += p.runtime_s;
  rec.mean_runtime_s = rec.plans ? runtime / static_cast<double>(rec.plans) : 0.0;

  for (std::size_t i = 1; i < log.executed.size(); ++i) {
    if (log.executed[i] != log.executed[i - 1] &&
        segment_hits_scene(scene, log.executed[i - 1], log.executed[i])) {
      rec.collision = true;
      break;
    }
  }

  if (auto traj = log.executed_trajectory()) rec.mean_priority = mean_priority(*traj, map);

  // Global length through reached waypoints; executed length up to the last one.
  Vec3 prev = path.start;
  double global = 0.0;
  std::size_t last_sample = 0;
  for (std::size_t i = 0; i < log.outcomes.size(); ++i) {
    if (log.outcomes[i] != WaypointOutcome::reached) continue;
    const Vec3& wp = path.waypoints.points.at(i);
    global += (wp - prev).norm();
    prev = wp;
    last_sample = log.outcome_samples.at(i);
  }
  double executed = 0.0;
  for (std::size_t i = 1; i < last_sample && i < log.executed.size(); ++i)
    executed += (log.executed[i] - log.executed[i - 1]).norm();
  rec.global_length = global;
  rec.executed_length = executed;
  if (global > 0.0 && executed > 0.0) {
    rec.has_ratio = true;
    rec.length_ratio = executed / global;
  }
  return rec;
}

BenchmarkReport run_benchmark(const BenchmarkSpec& spec) {
  return run_benchmark(spec, make_scenario(spec));
}

BenchmarkReport run_benchmark(const BenchmarkSpec& spec, const Scenario& scenario) {
  spec.validate();
  const std::size_t n_rows = spec.rows.size();
  const std::size_t n_paths = scenario.paths.size();
  const std::size_t total = n_rows * n_paths;

  BenchmarkReport report;
  report.missions.resize(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      const std::size_t r = k / n_paths, p = k % n_paths;
      MissionConfig cfg = spec.mission;
      cfg.planner = spec.rows[r].planner;
      MissionRecord rec;
      try {
        const MissionLog log = run_mission(scenario.scene, scenario.map, scenario.paths[p], cfg);
        rec = evaluate_mission(log, scenario.paths[p], scenario.scene, scenario.map);
      } catch (const std::exception& e) {
        rec = MissionRecord{};
        rec.error = e.what();
      }
      rec.row = r;
      rec.path = p;
      report.missions[k] = std::move(rec);
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(spec.threads), std::max<std::size_t>(total, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t r = 0; r < n_rows; ++r) {
    RowSummary row;
    row.name = spec.rows[r].name;
    row.kind = spec.rows[r].planner.kind;
    row.weights = spec.rows[r].planner.weights;
    std::vector<double> pbar, ratio;
    double runtime = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) {
      const MissionRecord& m = report.missions[r * n_paths + p];
      ++row.missions;
      if (!m.ok) {
        ++row.failures;
        continue;
      }
      pbar.push_back(m.mean_priority);
      if (m.has_ratio) ratio.push_back(m.length_ratio);
      runtime += m.mean_runtime_s * static_cast<double>(m.plans);
      row.plans += m.plans;
      if (m.collision) ++row.collisions;
      if (!m.complete || m.ticks > m.tick_budget) ++row.budget_overruns;
    }
    row.priority = mean_std(pbar);
    row.length_ratio = mean_std(ratio);
    row.mean_runtime_s = row.plans ? runtime / static_cast<double>(row.plans) : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<BenchmarkRow> sweep_rows(std::span<const double> ratios, PlannerKind kind) {
  std::vector<BenchmarkRow> rows;
  for (double r : ratios) {
    BenchmarkRow row;
    row.planner.kind = kind;
    row.planner.weights = PenaltyWeights{1.0, r};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_wp%g", std::string(to_string(kind)).c_str(), r);
    row.name = buf;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BenchmarkRow> planner_rows(const PenaltyWeights& weights) {
  std::vector<BenchmarkRow> rows;
  for (auto k : {PlannerKind::bezier, PlannerKind::ggwp, PlannerKind::lp_dijkstra,
                 PlannerKind::lp_astar, PlannerKind::wlp_astar}) {
    BenchmarkRow row;
    row.name = std::string(to_string(k));
    row.planner.kind = k;
    row.planner.weights = weights;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_summary_csv(const BenchmarkReport& report, std::ostream& out, bool include_runtime) {
  out << "row,name,planner,w_l,w_p,missions,failures,priority_mean,priority_std,"
         "length_ratio_mean,length_ratio_std,length_ratio_n,plans,collisions,budget_overruns";
  if (include_runtime) out << ",runtime_ms_mean";
  out << '\n';
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const RowSummary& r = report.rows[i];
    out << i << ',' << r.name << ',' << to_string(r.kind) << ',' << num(r.weights.length) << ','
        << num(r.weights.priority) << ',' << r.missions << ',' << r.failures << ','
        << num(r.priority.mean) << ',' << num(r.priority.std) << ',' << num(r.length_ratio.mean)
        << ',' << num(r.length_ratio.std) << ',' << r.length_ratio.n << ',' << r.plans << ','
        << r.collisions << ',' << r.budget_overruns;
    if (include_runtime) out << ',' << num(r.mean_runtime_s * 1e3);
    out << '\n';
  }
}

void write_missions_csv(const BenchmarkReport& report, std::ostream& out, bool include_runtime) {
  out << "row,path,ok,mean_priority,length_ratio,has_ratio,executed_length,global_length,plans,"
         "replans,reached,dropped_unreachable,dropped_timeout,ticks,tick_budget,complete,collision";
  if (include_runtime) out << ",runtime_ms_mean";
  out << '\n';
  for (const MissionRecord& m : report.missions) {
    out << m.row << ',' << m.path << ',' << m.ok << ',' << num(m.mean_priority) << ','
        << num(m.length_ratio) << ',' << m.has_ratio << ',' << num(m.executed_length) << ','
        << num(m.global_length) << ',' << m.plans << ',' << m.replans << ',' << m.reached << ','
        << m.dropped_unreachable << ',' << m.dropped_timeout << ',' << m.ticks << ','
        << m.tick_budget << ',' << m.complete << ',' << m.collision;
    if (include_runtime) out << ',' << num(m.mean_runtime_s * 1e3);
    out << '\n';
  }
}

}  // namespace ltp
