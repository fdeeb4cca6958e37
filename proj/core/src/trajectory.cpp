#include "ltp/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace ltp {

Trajectory::Trajectory(std::vector<Vec3> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("trajectory needs at least two points");
  }
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == points_[i - 1]) {
      throw std::invalid_argument("trajectory has coincident consecutive points");
    }
    cumulative_.push_back(cumulative_.back() + (points_[i] - points_[i - 1]).norm());
  }
}

Trajectory Trajectory::from_points_dedup(std::vector<Vec3> points) {
  return Trajectory(dedupe_consecutive(std::move(points)));
}

std::size_t Trajectory::segment_at(double s) const {
  if (s <= 0.0) return 0;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  auto idx = static_cast<std::size_t>(std::distance(cumulative_.begin(), it));
  // idx is the first vertex strictly beyond s; the segment starts one before.
  return std::min(idx == 0 ? 0 : idx - 1, points_.size() - 2);
}

Vec3 Trajectory::point_at(double s) const {
  if (s <= 0.0) return points_.front();
  if (s >= length()) return points_.back();
  const std::size_t i = segment_at(s);
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double u = (s - cumulative_[i]) / seg;
  return points_[i] + u * (points_[i + 1] - points_[i]);
}

std::vector<Vec3> dedupe_consecutive(std::vector<Vec3> points) {
  auto last = std::unique(points.begin(), points.end(),
                          [](const Vec3& a, const Vec3& b) { return a == b; });
  points.erase(last, points.end());
  return points;
}

}  // namespace ltp
