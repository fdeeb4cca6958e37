#include "ltp/occupancy.hpp"

#include <algorithm>
#include <ostream>

namespace ltp {

void GridSpec::validate() const {
  if ((dims.array() < 1).any()) throw std::invalid_argument("grid dims must be >= 1");
  if (!(resolution.array() > 0.0).all()) {
    throw std::invalid_argument("grid resolution must be > 0");
  }
  if (!center.allFinite()) throw std::invalid_argument("grid center must be finite");
}

OccupancyGrid::OccupancyGrid(GridSpec spec)
    : OccupancyGrid(spec, spec.center, Eigen::Vector3i::Zero()) {}

OccupancyGrid::OccupancyGrid(GridSpec spec, Vec3 anchor, Eigen::Vector3i shift)
    : spec_(std::move(spec)), anchor_(std::move(anchor)), shift_(std::move(shift)) {
  spec_.validate();
  spec_.center = anchor_ + shift_.cast<double>().cwiseProduct(spec_.resolution);
  origin_ = spec_.origin();
  cells_.assign(static_cast<std::size_t>(spec_.dims.x()) * spec_.dims.y() * spec_.dims.z(), 0);
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

std::optional<GridIndex> OccupancyGrid::index_of(const Vec3& p) const {
  std::array<int, 3> idx{};
  for (int k = 0; k < 3; ++k) {
    const double u = std::floor((p[k] - origin_[k]) / spec_.resolution[k]);
    if (!(u >= 0.0) || u >= static_cast<double>(spec_.dims[k])) return std::nullopt;
    idx[k] = static_cast<int>(u);
  }
  return GridIndex{idx[0], idx[1], idx[2]};
}

Vec3 OccupancyGrid::cell_center(const GridIndex& i) const {
  return origin_ + Vec3(i.ix + 0.5, i.iy + 0.5, i.iz + 0.5).cwiseProduct(spec_.resolution);
}

GridIndex OccupancyGrid::unlinear(std::size_t k) const {
  const auto nx = static_cast<std::size_t>(spec_.dims.x());
  const auto ny = static_cast<std::size_t>(spec_.dims.y());
  return GridIndex{static_cast<int>(k % nx), static_cast<int>((k / nx) % ny),
                   static_cast<int>(k / (nx * ny))};
}

OccupancyGrid OccupancyGrid::recentered(const Vec3& new_center) const {
  Eigen::Vector3i delta;
  for (int k = 0; k < 3; ++k) {
    const double cells = std::round((new_center[k] - spec_.center[k]) / spec_.resolution[k]);
    if (!(std::abs(cells) < 1e9)) throw std::invalid_argument("recenter shift too large");
    delta[k] = static_cast<int>(cells);
  }
  OccupancyGrid out(spec_, anchor_, shift_ + delta);
  if (delta.isZero()) {
    out.cells_ = cells_;
    return out;
  }
  const auto& n = spec_.dims;
  // new cell j covers the world region of old cell j + delta.
  for (int z = 0; z < n.z(); ++z) {
    const int oz = z + delta.z();
    if (oz < 0 || oz >= n.z()) continue;
    for (int y = 0; y < n.y(); ++y) {
      const int oy = y + delta.y();
      if (oy < 0 || oy >= n.y()) continue;
      const int x_lo = std::max(0, -delta.x());
      const int x_hi = std::min(n.x(), n.x() - delta.x());
      if (x_lo >= x_hi) continue;
      const auto src = cells_.begin() + static_cast<std::ptrdiff_t>(linear({x_lo + delta.x(), oy, oz}));
      std::copy(src, src + (x_hi - x_lo),
                out.cells_.begin() + static_cast<std::ptrdiff_t>(out.linear({x_lo, y, z})));
    }
  }
  return out;
}

bool OccupancyGrid::segment_is_free(const Vec3& a, const Vec3& b) const {
  bool free = true;
  traverse(a, b, [&](const GridIndex& i) {
    if (occupied(i)) {
      free = false;
      return false;
    }
    return true;
  });
  return free;
}

void write_slice_csv(const OccupancyGrid& grid, int iz, std::ostream& out) {
  if (iz < 0 || iz >= grid.dims().z()) throw std::out_of_range("slice index out of range");
  for (int y = grid.dims().y() - 1; y >= 0; --y) {
    for (int x = 0; x < grid.dims().x(); ++x) {
      if (x) out << ',';
      out << (grid.occupied({x, y, iz}) ? '1' : '0');
    }
    out << '\n';
  }
}

}  // namespace ltp
