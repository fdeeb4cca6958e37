#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ltp/bezier_planner.hpp"
#include "ltp/grid_planners.hpp"

namespace ltp {

enum class PlannerKind { bezier, ggwp, lp_dijkstra, lp_astar, wlp_astar };

std::string_view to_string(PlannerKind kind);
std::optional<PlannerKind> parse_planner(std::string_view name);

/// One configured local planner. Unset w_astar/admissible fall back to the
/// per-kind defaults: LP-Dijkstra 0, LP-A* 1 with the admissible heuristic,
/// WLP-A* sqrt(3) with the literal (unscaled) heuristic.
struct PlannerConfig {
  PlannerKind kind = PlannerKind::lp_dijkstra;
  PenaltyWeights weights;
  std::optional<double> w_astar;
  std::optional<bool> admissible_heuristic;
  SearchOptions search;
  BezierSearchConfig bezier = BezierSearchConfig::standard();

  SearchWeights search_weights() const;
};

/// Runs the configured planner. The Bezier search reports its candidate
/// count as `expansions` and its best total penalty as `surrogate_cost`.
PlanResult plan_local(const PlannerConfig& cfg, const Vec3& init, const Vec3& goal,
                      const OccupancyGrid& grid, const PriorityMap& map);

}  // namespace ltp
