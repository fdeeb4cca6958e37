#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ltp/occupancy.hpp"
#include "ltp/penalty.hpp"
#include "ltp/priority.hpp"
#include "ltp/trajectory.hpp"

namespace ltp {

/// Cubic Bezier curve with control points p0..p3.
struct BezierCurve {
  Vec3 p0;
  Vec3 p1;
  Vec3 p2;
  Vec3 p3;
};

/// Bernstein form at s in [0, 1]; throws std::domain_error outside.
Vec3 eval_bezier(const BezierCurve& c, double s);

/// `samples` points at evenly spaced s, endpoints included.
std::vector<Vec3> sample_bezier(const BezierCurve& c, int samples);

struct BezierSearchConfig {
  /// Offsets of p1 and p2 along the horizontal normal of the direct line.
  std::vector<double> lateral_offsets;
  /// Vertical offsets of p1 and p2; {0} keeps the search planar.
  std::vector<double> z_offsets{0.0};
  int samples = 64;

  /// 21 offsets evenly spanning +-100 m.
  static BezierSearchConfig standard();

  /// Throws std::invalid_argument unless both offset lists contain 0 and are
  /// symmetric, and samples >= 16.
  void validate() const;
};

/// Unit vector in the xy plane normal to the xy projection of goal - init;
/// world x when that projection vanishes.
Vec3 lateral_direction(const Vec3& init, const Vec3& goal);

/// Curve with p1, p2 at the 1/3 and 2/3 points of the direct line, shifted
/// by the given lateral and vertical offsets.
BezierCurve candidate_curve(const Vec3& init, const Vec3& goal, double lateral1,
                            double lateral2, double z1 = 0.0, double z2 = 0.0);

struct BezierPlan {
  std::optional<Trajectory> trajectory;  // empty on failure
  BezierCurve curve{};
  double lateral1 = 0.0;
  double lateral2 = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  PenaltyBreakdown penalty{};
  std::size_t evaluations = 0;
  double runtime_s = 0.0;

  bool found() const { return trajectory.has_value(); }
};

/// Penalty of one candidate's sampled polyline; +inf if it collides or
/// leaves the grid.
PenaltyBreakdown evaluate_candidate(const BezierCurve& curve, int samples,
                                    const OccupancyGrid& grid, const PriorityMap& map,
                                    const PenaltyWeights& weights);

/// Exhaustive search over the offset lattice for the curve with the lowest
/// total penalty. Ties go to the smaller |offset| sum, then to the
/// lexicographically smallest offsets. Throws std::invalid_argument when
/// init == goal and OutsideCoverage when either endpoint is off the grid.
BezierPlan plan_bezier(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                       const PriorityMap& map, const PenaltyWeights& weights,
                       const BezierSearchConfig& cfg = BezierSearchConfig::standard());

}  // namespace ltp
