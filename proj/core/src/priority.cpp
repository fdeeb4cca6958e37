#include "ltp/priority.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ltp {

GroundMask::GroundMask(int nx_, int ny_, double resolution_, Vec2 origin_, std::uint8_t fill)
    : nx(nx_), ny(ny_), resolution(resolution_), origin(std::move(origin_)) {
  if (nx < 1 || ny < 1 || !(resolution > 0.0)) {
    throw std::invalid_argument("mask needs positive size and resolution");
  }
  cells.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), fill);
}

double GroundMask::mean() const {
  if (cells.empty()) return 0.0;
  const double sum = std::accumulate(cells.begin(), cells.end(), 0.0);
  return sum / static_cast<double>(cells.size());
}

void GroundMask::validate() const {
  if (nx < 1 || ny < 1 || !(resolution > 0.0)) {
    throw std::invalid_argument("mask needs positive size and resolution");
  }
  if (cells.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny)) {
    throw std::invalid_argument("mask cell count does not match its shape");
  }
  for (auto v : cells) {
    if (v > 1) throw std::invalid_argument("mask values must be 0 or 1");
  }
}

PriorityMap::PriorityMap(int nx, int ny, double resolution, Vec2 origin, double fill)
    : nx_(nx), ny_(ny), resolution_(resolution), origin_(std::move(origin)) {
  if (nx < 1 || ny < 1 || !(resolution > 0.0)) {
    throw std::invalid_argument("priority map needs positive size and resolution");
  }
  if (!(fill >= 0.0 && fill <= 1.0)) throw std::invalid_argument("priority must be in [0,1]");
  values_.assign(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), fill);
}

PriorityMap PriorityMap::uniform(int nx, int ny, double resolution, Vec2 origin, double value) {
  return PriorityMap(nx, ny, resolution, std::move(origin), value);
}

void PriorityMap::set(int ix, int iy, double v) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("priority must be in [0,1]");
  values_[index(ix, iy)] = v;
}

double PriorityMap::cell_or_zero(int ix, int iy) const {
  if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return 0.0;
  return values_[index(ix, iy)];
}

double PriorityMap::sample(double x, double y) const {
  if (values_.empty()) return 0.0;
  const double u = (x - origin_.x()) / resolution_;
  const double v = (y - origin_.y()) / resolution_;
  if (sampling_ == PrioritySampling::nearest) {
    const double fu = std::floor(u);
    const double fv = std::floor(v);
    if (!(fu >= 0.0 && fv >= 0.0 && fu < nx_ && fv < ny_)) return 0.0;
    return values_[index(static_cast<int>(fu), static_cast<int>(fv))];
  }
  if (!(u >= 0.0 && v >= 0.0 && u < nx_ && v < ny_)) return 0.0;
  // Bilinear between cell centers; neighbours past the edge read as 0.
  const double cu = u - 0.5;
  const double cv = v - 0.5;
  const int i0 = static_cast<int>(std::floor(cu));
  const int j0 = static_cast<int>(std::floor(cv));
  const double a = cu - i0;
  const double b = cv - j0;
  return (1 - a) * (1 - b) * cell_or_zero(i0, j0) + a * (1 - b) * cell_or_zero(i0 + 1, j0) +
         (1 - a) * b * cell_or_zero(i0, j0 + 1) + a * b * cell_or_zero(i0 + 1, j0 + 1);
}

PriorityMap binary_priority(const GroundMask& mask) {
  mask.validate();
  PriorityMap map(mask.nx, mask.ny, mask.resolution, mask.origin);
  for (int y = 0; y < mask.ny; ++y)
    for (int x = 0; x < mask.nx; ++x) map.set(x, y, mask.at(x, y) ? 1.0 : 0.0);
  return map;
}

double footprint_size(double height, double fov) {
  if (!(height > 0.0)) throw std::invalid_argument("height must be > 0");
  if (!(fov > 0.0 && fov < std::numbers::pi)) throw std::invalid_argument("fov must be in (0, pi)");
  return 2.0 * height * std::tan(0.5 * fov);
}

int lpf_window_cells(double window, double resolution) {
  if (!(window > 0.0)) throw std::invalid_argument("lpf window must be > 0");
  const double cells = window / resolution;
  const long half = std::lround(std::max(0.0, (cells - 1.0) / 2.0));
  return static_cast<int>(2 * half + 1);
}

PriorityMap lpf_priority(const GroundMask& mask, double window) {
  mask.validate();
  const int w = lpf_window_cells(window, mask.resolution);
  const int h = w / 2;
  const int nx = mask.nx;
  const int ny = mask.ny;

  // Summed-area table with a zero row/column in front; sums of 0/1 are
  // exact integers in double.
  std::vector<double> sat(static_cast<std::size_t>(nx + 1) * (ny + 1), 0.0);
  auto s = [&](int x, int y) -> double& {
    return sat[static_cast<std::size_t>(y) * (nx + 1) + x];
  };
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x)
      s(x + 1, y + 1) = mask.at(x, y) + s(x, y + 1) + s(x + 1, y) - s(x, y);

  const double norm = 1.0 / (static_cast<double>(w) * w);
  PriorityMap map(nx, ny, mask.resolution, mask.origin);
  for (int y = 0; y < ny; ++y) {
    const int y0 = std::max(0, y - h);
    const int y1 = std::min(ny, y + h + 1);
    for (int x = 0; x < nx; ++x) {
      const int x0 = std::max(0, x - h);
      const int x1 = std::min(nx, x + h + 1);
      const double sum = s(x1, y1) - s(x0, y1) - s(x1, y0) + s(x0, y0);
      map.set(x, y, std::clamp(sum * norm, 0.0, 1.0));
    }
  }
  return map;
}

}  // namespace ltp
