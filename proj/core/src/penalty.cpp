#include "ltp/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltp {

void PenaltyWeights::validate() const {
  if (!(length >= 0.0) || !(priority >= 0.0)) {
    throw std::invalid_argument("penalty weights must be non-negative");
  }
  if (length == 0.0 && priority == 0.0) {
    throw std::invalid_argument("penalty weights must not both be zero");
  }
}

double trajectory_length(const Trajectory& traj) { return traj.length(); }

double eps0(const Trajectory& traj, const OccupancyGrid& grid) {
  const auto& pts = traj.points();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (!grid.segment_is_free(pts[i - 1], pts[i])) return kInfinity;
  }
  return 0.0;
}

double eps1(const Trajectory& traj, const Vec3& init, const Vec3& goal) {
  const double direct = (goal - init).norm();
  if (direct == 0.0) throw std::invalid_argument("eps1 undefined when init == goal");
  return traj.length() / direct;
}

double priority_quadrature_step(const PriorityMap& map) { return 0.5 * map.resolution(); }

double priority_integral(const Trajectory& traj, const PriorityMap& map, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("quadrature step must be > 0");
  const auto& pts = traj.points();
  const double res = map.resolution();
  std::vector<double> cuts;
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3& a = pts[i - 1];
    const Vec3& b = pts[i];
    const double len = (b - a).norm();

    // Pieces between crossings of the map's cell lines each lie in one cell,
    // so the midpoint rule is exact there for nearest-cell maps and the
    // result does not depend on where the polyline vertices sit.
    cuts.assign({0.0, 1.0});
    for (int k = 0; k < 2; ++k) {
      const double d = b[k] - a[k];
      if (d == 0.0) continue;
      const double ua = (a[k] - map.origin()[k]) / res;
      const double ub = (b[k] - map.origin()[k]) / res;
      const double lo = std::floor(std::min(ua, ub)) + 1.0;
      const double hi = std::ceil(std::max(ua, ub)) - 1.0;
      for (double line = lo; line <= hi; line += 1.0) {
        const double t = (map.origin()[k] + line * res - a[k]) / d;
        if (t > 0.0 && t < 1.0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());

    double seg = 0.0;
    for (std::size_t c = 1; c < cuts.size(); ++c) {
      const double t0 = cuts[c - 1];
      const double t1 = cuts[c];
      if (t1 <= t0) continue;
      const double piece = (t1 - t0) * len;
      const auto n = std::max<long>(1, static_cast<long>(std::ceil(piece / step)));
      const double h = (t1 - t0) / static_cast<double>(n);
      double sum = 0.0;
      for (long k = 0; k < n; ++k) {
        const Vec3 m = a + (t0 + (static_cast<double>(k) + 0.5) * h) * (b - a);
        sum += map.sample(m.x(), m.y());
      }
      seg += sum * h;
    }
    total += seg * len;
  }
  return total;
}

double eps2(const Trajectory& traj, const PriorityMap& map) {
  const double value = -priority_integral(traj, map, priority_quadrature_step(map)) / traj.length();
  return std::clamp(value, -1.0, 0.0);
}

PenaltyBreakdown total_penalty(const Trajectory& traj, const OccupancyGrid& grid,
                               const PriorityMap& map, const PenaltyWeights& weights,
                               const Vec3& init, const Vec3& goal) {
  weights.validate();
  PenaltyBreakdown out;
  out.length = traj.length();
  out.direct_length = (goal - init).norm();
  out.eps0 = eps0(traj, grid);
  out.eps1 = eps1(traj, init, goal);
  out.eps2 = eps2(traj, map);
  out.total = out.eps0 == 0.0
                  ? weights.length * out.eps1 + weights.priority * out.eps2
                  : kInfinity;
  return out;
}

}  // namespace ltp
