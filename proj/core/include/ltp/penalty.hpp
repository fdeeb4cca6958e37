#pragma once

#include <limits>

#include "ltp/occupancy.hpp"
#include "ltp/priority.hpp"
#include "ltp/trajectory.hpp"

namespace ltp {

/// Relative weight of path length versus priority coverage.
struct PenaltyWeights {
  double length = 1.0;    // W_L
  double priority = 0.0;  // W_p

  /// Throws std::invalid_argument on negative weights or both zero.
  void validate() const;
};

struct PenaltyBreakdown {
  double eps0 = 0.0;  // 0 or +inf
  double eps1 = 1.0;  // length ratio, >= 1
  double eps2 = 0.0;  // negated mean priority, in [-1, 0]
  double total = 0.0;
  double length = 0.0;
  double direct_length = 0.0;

  bool collides() const { return eps0 != 0.0; }
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double trajectory_length(const Trajectory& traj);

/// +inf iff some segment is not free in the grid. Throws OutsideCoverage for
/// points beyond the grid.
double eps0(const Trajectory& traj, const OccupancyGrid& grid);

/// L / |goal - init|. Throws std::invalid_argument when init == goal.
double eps1(const Trajectory& traj, const Vec3& init, const Vec3& goal);

/// Line integral of p along the xy projection, by midpoint rule with
/// `step` meters at most per sub-interval.
double priority_integral(const Trajectory& traj, const PriorityMap& map, double step);

/// Quadrature step used by eps2: half the priority map resolution.
double priority_quadrature_step(const PriorityMap& map);

/// -(integral of p dl) / L.
double eps2(const Trajectory& traj, const PriorityMap& map);

/// eps0 + W_L * eps1 + W_p * eps2; +inf whenever the trajectory collides.
PenaltyBreakdown total_penalty(const Trajectory& traj, const OccupancyGrid& grid,
                               const PriorityMap& map, const PenaltyWeights& weights,
                               const Vec3& init, const Vec3& goal);

}  // namespace ltp
