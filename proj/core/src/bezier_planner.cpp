#include "ltp/bezier_planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ltp {

Vec3 eval_bezier(const BezierCurve& c, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("bezier parameter outside [0,1]");
  const double u = 1.0 - s;
  return (u * u * u) * c.p0 + (3.0 * u * u * s) * c.p1 + (3.0 * u * s * s) * c.p2 +
         (s * s * s) * c.p3;
}

std::vector<Vec3> sample_bezier(const BezierCurve& c, int samples) {
  if (samples < 2) throw std::invalid_argument("need at least two curve samples");
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  pts.push_back(c.p0);
  for (int k = 1; k + 1 < samples; ++k) {
    pts.push_back(eval_bezier(c, static_cast<double>(k) / (samples - 1)));
  }
  pts.push_back(c.p3);
  return pts;
}

BezierSearchConfig BezierSearchConfig::standard() {
  BezierSearchConfig cfg;
  for (int i = -10; i <= 10; ++i) cfg.lateral_offsets.push_back(10.0 * i);
  return cfg;
}

namespace {

bool symmetric_with_zero(const std::vector<double>& v) {
  if (std::find(v.begin(), v.end(), 0.0) == v.end()) return false;
  return std::all_of(v.begin(), v.end(), [&](double o) {
    return std::find(v.begin(), v.end(), -o) != v.end();
  });
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a));
}

}  // namespace

void BezierSearchConfig::validate() const {
  if (!symmetric_with_zero(lateral_offsets)) {
    throw std::invalid_argument("lateral offsets must be symmetric and include 0");
  }
  if (!symmetric_with_zero(z_offsets)) {
    throw std::invalid_argument("z offsets must be symmetric and include 0");
  }
  if (samples < 16) throw std::invalid_argument("bezier search needs >= 16 samples");
}

Vec3 lateral_direction(const Vec3& init, const Vec3& goal) {
  const Vec2 d = (goal - init).head<2>();
  const double n = d.norm();
  if (n < 1e-12) return Vec3::UnitX();
  return Vec3(-d.y() / n, d.x() / n, 0.0);
}

BezierCurve candidate_curve(const Vec3& init, const Vec3& goal, double lateral1,
                            double lateral2, double z1, double z2) {
  const Vec3 n = lateral_direction(init, goal);
  const Vec3 d = goal - init;
  return BezierCurve{init, init + d / 3.0 + lateral1 * n + z1 * Vec3::UnitZ(),
                     init + 2.0 * d / 3.0 + lateral2 * n + z2 * Vec3::UnitZ(), goal};
}

PenaltyBreakdown evaluate_candidate(const BezierCurve& curve, int samples,
                                    const OccupancyGrid& grid, const PriorityMap& map,
                                    const PenaltyWeights& weights) {
  const Trajectory traj = Trajectory::from_points_dedup(sample_bezier(curve, samples));
  for (const Vec3& p : traj.points()) {
    if (!grid.contains(p)) {
      PenaltyBreakdown out;
      out.eps0 = kInfinity;
      out.total = kInfinity;
      out.length = traj.length();
      out.direct_length = (curve.p3 - curve.p0).norm();
      return out;
    }
  }
  return total_penalty(traj, grid, map, weights, curve.p0, curve.p3);
}

BezierPlan plan_bezier(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                       const PriorityMap& map, const PenaltyWeights& weights,
                       const BezierSearchConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  weights.validate();
  if (init == goal) throw std::invalid_argument("bezier planning needs init != goal");
  if (!grid.contains(init) || !grid.contains(goal)) {
    throw OutsideCoverage("bezier endpoints must lie inside the grid");
  }

  std::vector<double> lateral = cfg.lateral_offsets;
  std::vector<double> vertical = cfg.z_offsets;
  std::sort(lateral.begin(), lateral.end());
  std::sort(vertical.begin(), vertical.end());

  BezierPlan best;
  best.penalty.total = kInfinity;
  double best_spread = kInfinity;
  for (double o1 : lateral) {
    for (double o2 : lateral) {
      for (double z1 : vertical) {
        for (double z2 : vertical) {
          const BezierCurve curve = candidate_curve(init, goal, o1, o2, z1, z2);
          const PenaltyBreakdown pen = evaluate_candidate(curve, cfg.samples, grid, map, weights);
          ++best.evaluations;
          if (pen.total == kInfinity) continue;
          const double spread = std::abs(o1) + std::abs(o2) + std::abs(z1) + std::abs(z2);
          const bool better =
              pen.total < best.penalty.total &&
              !(nearly_equal(pen.total, best.penalty.total) && spread >= best_spread);
          const bool tie_better =
              nearly_equal(pen.total, best.penalty.total) && spread < best_spread;
          if (better || tie_better) {
            best.penalty = pen;
            best.curve = curve;
            best.lateral1 = o1;
            best.lateral2 = o2;
            best.z1 = z1;
            best.z2 = z2;
            best_spread = spread;
          }
        }
      }
    }
  }
  if (best.penalty.total != kInfinity) {
    best.trajectory = Trajectory::from_points_dedup(sample_bezier(best.curve, cfg.samples));
  }
  best.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return best;
}

}  // namespace ltp
