#pragma once

// Random instance generators and brute-force reference implementations.
// Nothing here calls into the search or penalty code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include <ltp/occupancy.hpp>
#include <ltp/priority.hpp>
#include <ltp/scene.hpp>

namespace ltp::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

/// Grid with unit-ish cells whose min corner sits at the world origin.
inline GridSpec spec_at_origin(Eigen::Vector3i dims, Vec3 res) {
  GridSpec s;
  s.dims = dims;
  s.resolution = res;
  s.center = 0.5 * dims.cast<double>().cwiseProduct(res);
  return s;
}

inline OccupancyGrid random_grid(Rng& rng, const GridSpec& spec, double fill) {
  OccupancyGrid g(spec);
  for (std::size_t k = 0; k < g.cell_count(); ++k)
    if (uniform(rng, 0.0, 1.0) < fill) g.set_occupied(g.unlinear(k));
  return g;
}

/// Priority map aligned with the grid's xy cells, values uniform in [0, 1].
inline PriorityMap random_priority(Rng& rng, const OccupancyGrid& g) {
  PriorityMap m(g.dims().x(), g.dims().y(), g.resolution().x(), g.origin().head<2>(), 0.0);
  for (int iy = 0; iy < m.ny(); ++iy)
    for (int ix = 0; ix < m.nx(); ++ix) m.set(ix, iy, uniform(rng, 0.0, 1.0));
  return m;
}

inline Vec3 random_point_in_cell(Rng& rng, const OccupancyGrid& g, const GridIndex& c) {
  const Vec3 lo = g.origin() + Vec3(c.ix, c.iy, c.iz).cwiseProduct(g.resolution());
  Vec3 p;
  for (int k = 0; k < 3; ++k) p[k] = lo[k] + g.resolution()[k] * uniform(rng, 0.05, 0.95);
  return p;
}

inline std::vector<GridIndex> free_cells(const OccupancyGrid& g) {
  std::vector<GridIndex> out;
  for (std::size_t k = 0; k < g.cell_count(); ++k)
    if (!g.occupied(g.unlinear(k))) out.push_back(g.unlinear(k));
  return out;
}

inline bool in_grid(const OccupancyGrid& g, const GridIndex& i) {
  return i.ix >= 0 && i.iy >= 0 && i.iz >= 0 && i.ix < g.dims().x() && i.iy < g.dims().y() &&
         i.iz < g.dims().z();
}

/// 26-neighbour move with every cell of the spanned block free.
inline bool oracle_move_free(const OccupancyGrid& g, const GridIndex& a, const GridIndex& b) {
  const int lx = std::min(a.ix, b.ix), hx = std::max(a.ix, b.ix);
  const int ly = std::min(a.iy, b.iy), hy = std::max(a.iy, b.iy);
  const int lz = std::min(a.iz, b.iz), hz = std::max(a.iz, b.iz);
  if (hx - lx > 1 || hy - ly > 1 || hz - lz > 1 || a == b) return false;
  for (int z = lz; z <= hz; ++z)
    for (int y = ly; y <= hy; ++y)
      for (int x = lx; x <= hx; ++x) {
        const GridIndex c{x, y, z};
        if (!in_grid(g, c) || g.occupied(c)) return false;
      }
  return true;
}

struct Band {
  int z_lo;
  int z_hi;
};

inline Band full_band(const OccupancyGrid& g) { return {0, g.dims().z() - 1}; }

template <typename F>
void for_each_move(const OccupancyGrid& g, const GridIndex& a, Band band, F&& f) {
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const GridIndex b{a.ix + dx, a.iy + dy, a.iz + dz};
        if (b.iz < band.z_lo || b.iz > band.z_hi) continue;
        if (oracle_move_free(g, a, b)) f(b);
      }
}

/// Bellman-Ford relaxation to a fixed point over the free cells of the band,
/// with edge cost |dc| (W_L + W_p (1 - p(mid))) / l_direct.
inline double oracle_lp_cost(const OccupancyGrid& g, const PriorityMap& map, double wl, double wp,
                             const Vec3& init, const Vec3& goal, Band band) {
  const GridIndex s = *g.index_of(goal);
  const GridIndex t = *g.index_of(init);
  const double l_direct = (goal - init).norm();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(g.cell_count(), inf);
  if (g.occupied(s) || g.occupied(t)) return inf;
  d[g.linear(s)] = 0.0;
  bool changed = true;
  for (std::size_t round = 0; changed && round <= g.cell_count(); ++round) {
    changed = false;
    for (std::size_t k = 0; k < g.cell_count(); ++k) {
      if (d[k] == inf) continue;
      const GridIndex a = g.unlinear(k);
      if (a.iz < band.z_lo || a.iz > band.z_hi) continue;
      const Vec3 ca = g.cell_center(a);
      for_each_move(g, a, band, [&](const GridIndex& b) {
        const Vec3 cb = g.cell_center(b);
        const Vec3 mid = 0.5 * (ca + cb);
        const double w = (cb - ca).norm() * (wl + wp * (1.0 - map.sample(mid.x(), mid.y()))) / l_direct;
        const std::size_t kb = g.linear(b);
        if (d[k] + w < d[kb] - 1e-15) {
          d[kb] = d[k] + w;
          changed = true;
        }
      });
    }
  }
  return d[g.linear(t)];
}

/// Hop count of the shortest 26-connected path, or -1.
inline int oracle_bfs_hops(const OccupancyGrid& g, const GridIndex& from, const GridIndex& to,
                           Band band) {
  if (g.occupied(from) || g.occupied(to)) return -1;
  std::vector<int> dist(g.cell_count(), -1);
  std::deque<GridIndex> q{from};
  dist[g.linear(from)] = 0;
  while (!q.empty()) {
    const GridIndex a = q.front();
    q.pop_front();
    if (a == to) return dist[g.linear(a)];
    for_each_move(g, a, band, [&](const GridIndex& b) {
      if (dist[g.linear(b)] < 0) {
        dist[g.linear(b)] = dist[g.linear(a)] + 1;
        q.push_back(b);
      }
    });
  }
  return -1;
}

/// Cells reachable from `from` by 26-connected free moves.
inline std::vector<std::uint8_t> oracle_flood(const OccupancyGrid& g, const GridIndex& from, Band band) {
  std::vector<std::uint8_t> seen(g.cell_count(), 0);
  if (g.occupied(from)) return seen;
  std::deque<GridIndex> q{from};
  seen[g.linear(from)] = 1;
  while (!q.empty()) {
    const GridIndex a = q.front();
    q.pop_front();
    for_each_move(g, a, band, [&](const GridIndex& b) {
      if (!seen[g.linear(b)]) {
        seen[g.linear(b)] = 1;
        q.push_back(b);
      }
    });
  }
  return seen;
}

/// Dense sampling of the segment; true if any sample lands in an occupied cell.
inline bool supersample_hits(const OccupancyGrid& g, const Vec3& a, const Vec3& b, double step) {
  const double len = (b - a).norm();
  const auto n = static_cast<std::size_t>(std::ceil(len / step)) + 1;
  for (std::size_t i = 0; i <= n; ++i) {
    const Vec3 p = a + (b - a) * (static_cast<double>(i) / static_cast<double>(n));
    const auto c = g.index_of(p);
    if (c && g.occupied(*c)) return true;
  }
  return false;
}

/// Fine midpoint rule for the line integral of p along the xy projection.
inline double brute_priority_integral(const std::vector<Vec3>& pts, const PriorityMap& map, int per_segment) {
  double sum = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Vec3 a = pts[i - 1], b = pts[i];
    const double len = (b - a).norm();
    for (int k = 0; k < per_segment; ++k) {
      const Vec3 m = a + (b - a) * ((k + 0.5) / per_segment);
      sum += map.sample(m.x(), m.y()) * len / per_segment;
    }
  }
  return sum;
}

/// Two-pass mean and sample standard deviation.
inline std::pair<double, double> two_pass_mean_std(const std::vector<double>& v) {
  if (v.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

/// Direct O(n^2 w^2) zero-padded box filter.
inline std::vector<double> direct_box_filter(const GroundMask& m, int w) {
  const int h = w / 2;
  std::vector<double> out(static_cast<std::size_t>(m.nx) * m.ny, 0.0);
  for (int y = 0; y < m.ny; ++y)
    for (int x = 0; x < m.nx; ++x) {
      double s = 0.0;
      for (int dy = -h; dy <= h; ++dy)
        for (int dx = -h; dx <= h; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx >= 0 && yy >= 0 && xx < m.nx && yy < m.ny) s += m.at(xx, yy);
        }
      out[m.index(x, y)] = s / (w * w);
    }
  return out;
}

/// Dense surface sensor used by the scripted scenes.
inline LidarConfig dense_lidar(double range) {
  return LidarConfig::lattice(720, 61, -std::numbers::pi / 2, std::numbers::pi / 2, range);
}

}  // namespace ltp::testing
