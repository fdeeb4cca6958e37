#include "ltp/planner.hpp"

#include <cmath>

namespace ltp {

std::string_view to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::bezier: return "bezier";
    case PlannerKind::ggwp: return "ggwp";
    case PlannerKind::lp_dijkstra: return "lp_dijkstra";
    case PlannerKind::lp_astar: return "lp_astar";
    case PlannerKind::wlp_astar: return "wlp_astar";
  }
  return "unknown";
}

std::optional<PlannerKind> parse_planner(std::string_view name) {
  for (auto k : {PlannerKind::bezier, PlannerKind::ggwp, PlannerKind::lp_dijkstra,
                 PlannerKind::lp_astar, PlannerKind::wlp_astar}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

SearchWeights PlannerConfig::search_weights() const {
  SearchWeights sw;
  sw.weights = weights;
  switch (kind) {
    case PlannerKind::lp_dijkstra:
      sw.w_astar = 0.0;
      sw.admissible_heuristic = true;
      break;
    case PlannerKind::lp_astar:
      sw.w_astar = 1.0;
      sw.admissible_heuristic = true;
      break;
    case PlannerKind::wlp_astar:
      sw.w_astar = std::sqrt(3.0);
      sw.admissible_heuristic = false;
      break;
    default:
      break;
  }
  if (w_astar) sw.w_astar = *w_astar;
  if (admissible_heuristic) sw.admissible_heuristic = *admissible_heuristic;
  return sw;
}

PlanResult plan_local(const PlannerConfig& cfg, const Vec3& init, const Vec3& goal,
                      const OccupancyGrid& grid, const PriorityMap& map) {
  switch (cfg.kind) {
    case PlannerKind::bezier: {
      BezierPlan bp = plan_bezier(init, goal, grid, map, cfg.weights, cfg.bezier);
      PlanResult out;
      out.trajectory = std::move(bp.trajectory);
      out.surrogate_cost = bp.penalty.total;
      out.expansions = bp.evaluations;
      out.runtime_s = bp.runtime_s;
      return out;
    }
    case PlannerKind::ggwp:
      return plan_ggwp(init, goal, grid, cfg.search);
    default:
      return plan_lp_astar(init, goal, grid, map, cfg.search_weights(), cfg.search);
  }
}

}  // namespace ltp
