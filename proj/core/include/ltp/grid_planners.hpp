#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ltp/occupancy.hpp"
#include "ltp/penalty.hpp"
#include "ltp/priority.hpp"
#include "ltp/trajectory.hpp"

namespace ltp {

/// Weights for the length-priority search family.
///
/// w_astar = 0 gives LP-Dijkstra, 1 gives LP-A*, other values WLP-A*.
/// With admissible_heuristic the heuristic is scaled by W_L, which makes it
/// a lower bound of the additive cost below.
struct SearchWeights {
  PenaltyWeights weights;
  double w_astar = 1.0;
  bool admissible_heuristic = true;
};

struct SearchOptions {
  /// Cells of vertical freedom above and below the init/goal layers;
  /// nullopt searches the full grid height.
  std::optional<int> z_band = 1;
};

struct PlanResult {
  std::optional<Trajectory> trajectory;  // empty when unreachable
  std::vector<GridIndex> cells;          // init cell first, goal cell last
  double surrogate_cost = kInfinity;
  std::size_t expansions = 0;
  double runtime_s = 0.0;

  bool reached() const { return trajectory.has_value(); }
};

/// Inclusive index box the search is allowed to touch.
struct SearchVolume {
  GridIndex lo;
  GridIndex hi;

  bool contains(const GridIndex& i) const {
    return i.ix >= lo.ix && i.iy >= lo.iy && i.iz >= lo.iz && i.ix <= hi.ix && i.iy <= hi.iy &&
           i.iz <= hi.iz;
  }
  std::size_t size() const {
    return static_cast<std::size_t>(hi.ix - lo.ix + 1) * (hi.iy - lo.iy + 1) *
           (hi.iz - lo.iz + 1);
  }
};

SearchVolume search_volume(const OccupancyGrid& grid, const GridIndex& init,
                           const GridIndex& goal, const SearchOptions& opts);

/// True iff a and b are distinct 26-neighbours and every cell of the
/// axis-aligned block they span is free, so the straight move between their
/// centers crosses no occupied cell (no corner cutting).
bool move_is_free(const OccupancyGrid& grid, const GridIndex& a, const GridIndex& b);

/// dl * (W_L + W_p * (1 - p_mid)) / l_direct between neighbouring cell
/// centers, with p_mid sampled at the edge midpoint. +inf when either end is
/// occupied or the move cuts an occupied corner. Throws
/// std::invalid_argument if a, b are not 26-neighbours or l_direct <= 0.
double edge_cost(const GridIndex& a, const GridIndex& b, const OccupancyGrid& grid,
                 const PriorityMap& map, const PenaltyWeights& weights, double l_direct);

/// Backward weighted A* from the goal cell toward the init cell minimizing
/// the additive length-priority cost. Returns unreachable immediately if
/// the goal cell is occupied. Throws OutsideCoverage when an endpoint is
/// off the grid, std::invalid_argument when the init cell is occupied or
/// init == goal.
PlanResult plan_lp_astar(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                         const PriorityMap& map, const SearchWeights& sw,
                         const SearchOptions& opts = {});

/// Hop-count wavefront from the goal over free cells.
class NavigationField {
 public:
  static constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

  const SearchVolume& volume() const { return volume_; }
  const GridIndex& goal() const { return goal_; }

  /// kUnreached for occupied, unvisited or out-of-volume cells.
  std::int32_t value(const GridIndex& i) const;
  bool reached(const GridIndex& i) const { return value(i) != kUnreached; }

  std::size_t expansions() const { return expansions_; }

 private:
  friend NavigationField ggwp_field(const OccupancyGrid&, const GridIndex&,
                                    std::optional<GridIndex>, const SearchVolume&);
  friend std::optional<std::vector<GridIndex>> ggwp_extract(const NavigationField&,
                                                            const GridIndex&);

  std::size_t local(const GridIndex& i) const;

  SearchVolume volume_;
  GridIndex goal_;
  Vec3 resolution_ = Vec3::Ones();
  std::vector<std::int32_t> values_;
  std::vector<std::uint8_t> blocked_;
  std::size_t expansions_ = 0;
};

/// Breadth-first wavefront over free cells of `volume`, starting at goal.
/// If stop_at is given, propagation ends as soon as that cell is labeled.
/// An occupied goal yields an all-unreached field.
NavigationField ggwp_field(const OccupancyGrid& grid, const GridIndex& goal,
                           std::optional<GridIndex> stop_at, const SearchVolume& volume);

/// Steepest descent from init to the goal. Ties go to the neighbour nearest
/// the goal cell center, then to the smallest index. Returns nullopt when
/// init is unreached; a single cell when init is the goal.
std::optional<std::vector<GridIndex>> ggwp_extract(const NavigationField& field,
                                                   const GridIndex& init);

/// Wavefront plus descent. Unreachable when init and goal lie in different
/// free components (or the goal cell is occupied).
PlanResult plan_ggwp(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                     const SearchOptions& opts = {});

/// init, the cell centers, then goal, with duplicates dropped.
std::vector<Vec3> cells_to_polyline(const OccupancyGrid& grid, const Vec3& init,
                                    const std::vector<GridIndex>& cells, const Vec3& goal);

}  // namespace ltp
