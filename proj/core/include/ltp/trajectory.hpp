#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace ltp {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Ordered 3D polyline with cumulative arc length.
///
/// Invariants: at least two points, no two consecutive points equal, so the
/// total length is strictly positive. Construction throws
/// std::invalid_argument otherwise.
class Trajectory {
 public:
  explicit Trajectory(std::vector<Vec3> points);

  /// Drops consecutive duplicates first; throws if fewer than two distinct
  /// points remain.
  static Trajectory from_points_dedup(std::vector<Vec3> points);

  const std::vector<Vec3>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Vec3& front() const { return points_.front(); }
  const Vec3& back() const { return points_.back(); }

  double length() const { return cumulative_.back(); }

  /// cumulative()[i] is the arc length from points()[0] to points()[i].
  std::span<const double> cumulative() const { return cumulative_; }

  /// Point at arc length s, clamped to [0, length()].
  Vec3 point_at(double s) const;

  /// Index of the segment containing arc length s (clamped).
  std::size_t segment_at(double s) const;

 private:
  std::vector<Vec3> points_;
  std::vector<double> cumulative_;
};

/// Removes exact consecutive duplicates.
std::vector<Vec3> dedupe_consecutive(std::vector<Vec3> points);

}  // namespace ltp
