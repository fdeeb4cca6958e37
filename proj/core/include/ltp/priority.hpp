#pragma once

#include <cstdint>
#include <vector>

#include "ltp/trajectory.hpp"

namespace ltp {

/// 2D ground segmentation: 1 marks a valid landing region.
/// Cell (ix, iy) covers [origin + i*res, origin + (i+1)*res) on each axis.
struct GroundMask {
  int nx = 0;
  int ny = 0;
  double resolution = 1.0;
  Vec2 origin = Vec2::Zero();
  std::vector<std::uint8_t> cells;  // row-major, ix fastest

  GroundMask() = default;
  GroundMask(int nx, int ny, double resolution, Vec2 origin, std::uint8_t fill = 0);

  std::uint8_t at(int ix, int iy) const { return cells[index(ix, iy)]; }
  void set(int ix, int iy, std::uint8_t v) { cells[index(ix, iy)] = v; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(ix);
  }
  double mean() const;

  /// Throws std::invalid_argument on bad shape or values outside {0,1}.
  void validate() const;
};

enum class PrioritySampling { nearest, bilinear };

/// Priority p(x, y) in [0, 1] on a regular 2D lattice; zero off the map.
class PriorityMap {
 public:
  PriorityMap() = default;
  PriorityMap(int nx, int ny, double resolution, Vec2 origin, double fill = 0.0);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double resolution() const { return resolution_; }
  const Vec2& origin() const { return origin_; }
  const std::vector<double>& values() const { return values_; }

  double at(int ix, int iy) const { return values_[index(ix, iy)]; }
  void set(int ix, int iy, double v);

  PrioritySampling sampling() const { return sampling_; }
  void set_sampling(PrioritySampling s) { sampling_ = s; }

  /// Nearest-cell lookup (half-open cells) or bilinear between cell
  /// centers, per sampling(). Returns 0 off the map.
  double sample(double x, double y) const;

  /// A map that is `value` everywhere on [origin, origin + n*res).
  static PriorityMap uniform(int nx, int ny, double resolution, Vec2 origin, double value);

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }
  double cell_or_zero(int ix, int iy) const;

  int nx_ = 0;
  int ny_ = 0;
  double resolution_ = 1.0;
  Vec2 origin_ = Vec2::Zero();
  std::vector<double> values_;
  PrioritySampling sampling_ = PrioritySampling::nearest;
};

/// 1 on valid landing cells, 0 elsewhere.
PriorityMap binary_priority(const GroundMask& mask);

/// Ground footprint side of a look-down camera: 2 h tan(fov / 2).
/// Throws std::invalid_argument unless height > 0 and 0 < fov < pi.
double footprint_size(double height, double fov);

/// Odd window width in cells for a window of `window` meters.
int lpf_window_cells(double window, double resolution);

/// Zero-padded moving average with a square window of side `window`
/// meters, rounded to an odd number of cells.
PriorityMap lpf_priority(const GroundMask& mask, double window);

inline double sample_priority(const PriorityMap& map, double x, double y) {
  return map.sample(x, y);
}

}  // namespace ltp
