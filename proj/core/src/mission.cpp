#include "ltp/mission.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace ltp {

double MissionConfig::effective_arrival_radius() const {
  return arrival_radius > 0.0 ? arrival_radius : grid.resolution.norm();
}

void MissionConfig::validate() const {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
  if (!(tick > 0.0)) throw std::invalid_argument("tick must be > 0");
  if (!(budget_factor > 0.0)) throw std::invalid_argument("budget factor must be > 0");
  if (arrival_radius < 0.0) throw std::invalid_argument("arrival radius must be >= 0");
  if (z_band && *z_band < 0) throw std::invalid_argument("z band must be >= 0");
  grid.validate();
  lidar.validate();
  planner.weights.validate();
}

std::string_view to_string(WaypointOutcome outcome) {
  switch (outcome) {
    case WaypointOutcome::reached: return "reached";
    case WaypointOutcome::dropped_unreachable: return "dropped_unreachable";
    case WaypointOutcome::dropped_timeout: return "dropped_timeout";
  }
  return "unknown";
}

std::string_view to_string(PlanReason reason) {
  switch (reason) {
    case PlanReason::new_goal: return "new_goal";
    case PlanReason::blocked: return "blocked";
    case PlanReason::continuation: return "continuation";
  }
  return "unknown";
}

std::size_t MissionLog::replan_count() const {
  return static_cast<std::size_t>(std::count_if(plans.begin(), plans.end(), [](const PlanEvent& e) {
    return e.reason == PlanReason::blocked;
  }));
}

std::size_t MissionLog::count(WaypointOutcome outcome) const {
  return static_cast<std::size_t>(std::count(outcomes.begin(), outcomes.end(), outcome));
}

double MissionLog::executed_length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < executed.size(); ++i) len += (executed[i] - executed[i - 1]).norm();
  return len;
}

std::optional<Trajectory> MissionLog::executed_trajectory() const {
  auto pts = dedupe_consecutive(executed);
  if (pts.size() < 2) return std::nullopt;
  return Trajectory(std::move(pts));
}

namespace {

GridSpec centered(GridSpec spec, const Vec3& c) {
  spec.center = c;
  return spec;
}

// Nearest point to p that is at least half a cell inside the coverage.
Vec3 clamp_into(const OccupancyGrid& grid, const Vec3& p) {
  const Vec3 lo = grid.origin() + 0.5 * grid.resolution();
  const Vec3 hi = grid.origin() + grid.spec().coverage() - 0.5 * grid.resolution();
  return p.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

Mission::Mission(const Scene& scene, const PriorityMap& map, const GlobalPath& path,
                 MissionConfig cfg)
    : scene_(scene),
      map_(map),
      cfg_(std::move(cfg)),
      waypoints_(path.waypoints),
      grid_(centered(cfg_.grid, path.start)),
      position_(path.start) {
  cfg_.validate();
  record(0.0);
  sense();
  activate_goal();
  log_.complete = complete();
}

void Mission::record(double t) {
  log_.executed.push_back(position_);
  log_.times.push_back(t);
}

void Mission::sense() {
  grid_ = sense_and_update(scene_, std::move(grid_), SensorPose{position_, Eigen::Matrix3d::Identity()},
                           cfg_.lidar);
}

void Mission::activate_goal() {
  const double radius = cfg_.effective_arrival_radius();
  while (!waypoints_.exhausted()) {
    const Vec3 goal = waypoints_.current();
    const double dist = (goal - position_).norm();
    if (dist <= radius) {
      log_.outcomes.push_back(WaypointOutcome::reached);
      log_.outcome_ticks.push_back(log_.ticks);
  log_.outcome_samples.push_back(log_.executed.size());
      ++waypoints_.cursor;
      continue;
    }
    const int budget =
        std::max(1, static_cast<int>(std::ceil(cfg_.budget_factor * dist / (cfg_.speed * cfg_.tick))));
    goal_deadline_ = log_.ticks + budget;
    log_.tick_budget += budget;
    if (plan(PlanReason::new_goal)) return;
    log_.outcomes.push_back(WaypointOutcome::dropped_unreachable);
    log_.outcome_ticks.push_back(log_.ticks);
  log_.outcome_samples.push_back(log_.executed.size());
    ++waypoints_.cursor;
  }
  trajectory_.reset();
}

void Mission::advance_goal(WaypointOutcome outcome) {
  if (waypoints_.exhausted()) return;
  log_.outcomes.push_back(outcome);
  log_.outcome_ticks.push_back(log_.ticks);
  log_.outcome_samples.push_back(log_.executed.size());
  ++waypoints_.cursor;
  trajectory_.reset();
  activate_goal();
  log_.complete = complete();
}

bool Mission::plan(PlanReason reason) {
  PlanEvent ev;
  ev.tick = log_.ticks;
  ev.reason = reason;
  ev.waypoint = waypoints_.cursor;
  ev.from = position_;

  const Vec3 target = clamp_into(grid_, waypoints_.current());
  Vec3 init = position_;
  const auto cell = grid_.index_of(position_);
  std::optional<Trajectory> result;
  if (cell && grid_.occupied(*cell)) {
    // The vehicle's own cell just became occupied: plan from the closest
    // free neighbour instead, staying in the same layer when possible.
    std::optional<GridIndex> best;
    std::pair<bool, double> best_d{true, kInfinity};
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const GridIndex n{cell->ix + dx, cell->iy + dy, cell->iz + dz};
          if (!grid_.contains(n) || grid_.occupied(n)) continue;
          const std::pair<bool, double> d{dz != 0, (grid_.cell_center(n) - position_).norm()};
          if (!best || d < best_d) {
            best_d = d;
            best = n;
          }
        }
    if (best) {
      init = grid_.cell_center(*best);
      ev.escaped = true;
    }
  }

  bool ok = false;
  if (!(cell && grid_.occupied(*cell)) || ev.escaped) {
    try {
      if (init != target) {
        PlannerConfig pc = cfg_.planner;
        if (cfg_.z_band) pc.search.z_band = *cfg_.z_band;
        PlanResult r = plan_local(pc, init, target, grid_, map_);
        ev.runtime_s = r.runtime_s;
        ev.expansions = r.expansions;
        if (r.trajectory) {
          std::vector<Vec3> pts;
          if (ev.escaped) pts.push_back(position_);
          pts.insert(pts.end(), r.trajectory->points().begin(), r.trajectory->points().end());
          pts = dedupe_consecutive(std::move(pts));
          if (pts.size() >= 2) {
            result = Trajectory(std::move(pts));
            ok = true;
          }
        }
      } else if (ev.escaped) {
        result = Trajectory({position_, target});
        ok = true;
      }
    } catch (const std::invalid_argument&) {
      ok = false;
    } catch (const std::out_of_range&) {
      ok = false;
    }
  }
  ev.success = ok;
  log_.plans.push_back(ev);
  trajectory_ = std::move(result);
  progress_ = 0.0;
  return ok;
}

bool Mission::suffix_blocked() const {
  if (!trajectory_) return false;
  const auto& pts = trajectory_->points();
  const std::size_t seg = trajectory_->segment_at(progress_);
  Vec3 from = position_;
  for (std::size_t i = seg + 1; i < pts.size(); ++i) {
    if (!grid_.contains(from) || !grid_.contains(pts[i])) break;
    if (from != pts[i] && !grid_.segment_is_free(from, pts[i])) return true;
    from = pts[i];
  }
  return false;
}

void Mission::tick() {
  if (complete()) return;
  const double t0 = log_.ticks * cfg_.tick;
  ++log_.ticks;

  // (1) move
  if (trajectory_) {
    const double step = cfg_.speed * cfg_.tick;
    const double end = std::min(progress_ + step, trajectory_->length());
    const auto cum = trajectory_->cumulative();
    for (std::size_t i = 1; i < cum.size(); ++i) {
      if (cum[i] > progress_ && cum[i] < end) {
        position_ = trajectory_->points()[i];
        record(t0 + (cum[i] - progress_) / cfg_.speed);
      }
    }
    position_ = trajectory_->point_at(end);
    record(t0 + (end - progress_) / cfg_.speed);
    progress_ = end;
  } else {
    record(t0 + cfg_.tick);
  }

  // (2) recenter, (3) sense
  grid_ = grid_.recentered(position_);
  sense();

  // (4) replan on a newly blocked suffix
  if (trajectory_ && suffix_blocked()) {
    if (!plan(PlanReason::blocked)) {
      advance_goal(WaypointOutcome::dropped_unreachable);
      return;
    }
  }

  // (5) goal bookkeeping
  if ((waypoints_.current() - position_).norm() <= cfg_.effective_arrival_radius()) {
    advance_goal(WaypointOutcome::reached);
  } else if (log_.ticks >= goal_deadline_) {
    advance_goal(WaypointOutcome::dropped_timeout);
  } else if (!trajectory_ || progress_ >= trajectory_->length()) {
    if (!plan(PlanReason::continuation)) advance_goal(WaypointOutcome::dropped_unreachable);
  }
}

MissionLog run_mission(const Scene& scene, const PriorityMap& map, const GlobalPath& path,
                       const MissionConfig& cfg) {
  Mission mission(scene, map, path, cfg);
  // Every goal carries a finite deadline, so this terminates; the cap only
  // guards against a broken configuration.
  constexpr int kHardCap = 10'000'000;
  while (!mission.complete() && mission.log().ticks < kHardCap) mission.tick();
  MissionLog log = mission.log();
  log.complete = mission.complete();
  return log;
}

}  // namespace ltp
