#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "ltp/trajectory.hpp"

namespace ltp {

struct GridIndex {
  int ix = 0;
  int iy = 0;
  int iz = 0;

  auto operator<=>(const GridIndex&) const = default;
};

/// Geometry of a vehicle-centered grid. Coverage per axis is
/// dims * resolution; the world origin (min corner) is center - coverage / 2.
struct GridSpec {
  Eigen::Vector3i dims{200, 200, 40};
  Vec3 resolution{2.0, 2.0, 4.0};
  Vec3 center{0.0, 0.0, 0.0};

  /// Throws std::invalid_argument on non-positive dims or resolution.
  void validate() const;

  Vec3 coverage() const { return dims.cast<double>().cwiseProduct(resolution); }
  Vec3 origin() const { return center - 0.5 * coverage(); }
};

/// Thrown when a query point lies outside the grid coverage.
class OutsideCoverage : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Binary 3D occupancy grid with free-by-default cells.
///
/// Cells use half-open world intervals [origin + i*r, origin + (i+1)*r).
/// The grid is a value type: planners receive const snapshots and the
/// sensing step produces a new one, so a snapshot can be read from several
/// threads at once.
class OccupancyGrid {
 public:
  explicit OccupancyGrid(GridSpec spec = {});

  const GridSpec& spec() const { return spec_; }
  const Eigen::Vector3i& dims() const { return spec_.dims; }
  const Vec3& resolution() const { return spec_.resolution; }
  const Vec3& center() const { return spec_.center; }
  Vec3 origin() const { return origin_; }

  std::size_t cell_count() const { return cells_.size(); }
  std::size_t occupied_count() const;

  bool contains(const GridIndex& i) const {
    return i.ix >= 0 && i.iy >= 0 && i.iz >= 0 && i.ix < spec_.dims.x() &&
           i.iy < spec_.dims.y() && i.iz < spec_.dims.z();
  }
  bool contains(const Vec3& p) const { return index_of(p).has_value(); }

  /// Cell containing p, or nullopt when p is beyond coverage.
  std::optional<GridIndex> index_of(const Vec3& p) const;

  Vec3 cell_center(const GridIndex& i) const;

  std::size_t linear(const GridIndex& i) const {
    return static_cast<std::size_t>(i.ix) +
           static_cast<std::size_t>(spec_.dims.x()) *
               (static_cast<std::size_t>(i.iy) +
                static_cast<std::size_t>(spec_.dims.y()) * static_cast<std::size_t>(i.iz));
  }
  GridIndex unlinear(std::size_t k) const;

  bool occupied(const GridIndex& i) const { return cells_[linear(i)] != 0; }
  void set_occupied(const GridIndex& i, bool value = true) { cells_[linear(i)] = value ? 1 : 0; }

  /// Returns a grid centered at new_center snapped to a whole number of
  /// cells from the current center. Overlapping occupancy is copied
  /// verbatim; newly exposed cells are free.
  OccupancyGrid recentered(const Vec3& new_center) const;

  /// True iff the traversal from a to b meets no occupied cell. Throws
  /// OutsideCoverage when an endpoint is outside the grid.
  bool segment_is_free(const Vec3& a, const Vec3& b) const;

  /// Visits every cell the segment a-b intersects, in order from a. Where the
  /// segment passes within kTieEpsilon of a cell edge or corner, every cell
  /// sharing that edge or corner is visited, so diagonal gaps between
  /// occupied cells are never crossed. `visit(GridIndex)` returns false to
  /// stop early. Throws OutsideCoverage when an endpoint is outside.
  template <class Visitor>
  void traverse(const Vec3& a, const Vec3& b, Visitor&& visit) const;

  friend bool operator==(const OccupancyGrid& a, const OccupancyGrid& b) {
    return a.spec_.dims == b.spec_.dims && a.spec_.resolution == b.spec_.resolution &&
           a.spec_.center == b.spec_.center && a.cells_ == b.cells_;
  }

  static constexpr double kTieEpsilon = 1e-9;

 private:
  OccupancyGrid(GridSpec spec, Vec3 anchor, Eigen::Vector3i shift);

  GridSpec spec_;
  // center = anchor_ + shift_ * resolution, so repeated recentering never
  // accumulates rounding in the cell lattice.
  Vec3 anchor_;
  Eigen::Vector3i shift_;
  Vec3 origin_;
  std::vector<std::uint8_t> cells_;
};

/// Writes z-slice iz as rows of 0/1 separated by commas; row 0 is the
/// largest y so the output reads north-up.
void write_slice_csv(const OccupancyGrid& grid, int iz, std::ostream& out);

template <class Visitor>
void OccupancyGrid::traverse(const Vec3& a, const Vec3& b, Visitor&& visit) const {
  const auto ia = index_of(a);
  const auto ib = index_of(b);
  if (!ia || !ib) throw OutsideCoverage("segment endpoint outside grid coverage");

  const Vec3 ua = (a - origin_).cwiseQuotient(spec_.resolution);
  const Vec3 ub = (b - origin_).cwiseQuotient(spec_.resolution);
  const Vec3 d = ub - ua;

  std::array<int, 3> cur{ia->ix, ia->iy, ia->iz};
  std::array<int, 3> step{};
  std::array<double, 3> t_max{};
  std::array<double, 3> t_delta{};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    if (d[k] > 0.0) {
      step[k] = 1;
      t_delta[k] = 1.0 / d[k];
      t_max[k] = (static_cast<double>(cur[k]) + 1.0 - ua[k]) / d[k];
    } else if (d[k] < 0.0) {
      step[k] = -1;
      t_delta[k] = -1.0 / d[k];
      t_max[k] = (ua[k] - static_cast<double>(cur[k])) / -d[k];
    } else {
      t_max[k] = kInf;
      t_delta[k] = kInf;
    }
  }

  if (!visit(GridIndex{cur[0], cur[1], cur[2]})) return;

  const int max_steps = std::abs(ib->ix - ia->ix) + std::abs(ib->iy - ia->iy) +
                        std::abs(ib->iz - ia->iz) + 6;
  for (int n = 0; n < max_steps; ++n) {
    const double t_min = std::min({t_max[0], t_max[1], t_max[2]});
    if (t_min > 1.0 + kTieEpsilon) break;

    std::array<bool, 3> tied{};
    for (int k = 0; k < 3; ++k) tied[k] = t_max[k] <= t_min + kTieEpsilon;

    // Cells touched at a shared edge/corner: every non-empty subset of the
    // tied axes, the full subset (the next cell proper) last.
    for (int mask = 1; mask < 8; ++mask) {
      bool valid = true;
      std::array<int, 3> c = cur;
      for (int k = 0; k < 3; ++k) {
        if (mask & (1 << k)) {
          if (!tied[k]) {
            valid = false;
            break;
          }
          c[k] += step[k];
        }
      }
      if (!valid) continue;
      GridIndex g{c[0], c[1], c[2]};
      if (!contains(g)) continue;
      if (!visit(g)) return;
    }
    bool left = false;
    for (int k = 0; k < 3; ++k) {
      if (tied[k]) {
        cur[k] += step[k];
        t_max[k] += t_delta[k];
      }
      if (cur[k] < 0 || cur[k] >= spec_.dims[k]) left = true;
    }
    if (left) break;
  }
}

}  // namespace ltp
