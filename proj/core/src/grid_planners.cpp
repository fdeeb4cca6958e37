#include "ltp/grid_planners.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>

namespace ltp {

namespace {

using Clock = std::chrono::steady_clock;

struct Move {
  int dx, dy, dz;
  double length;  // meters between cell centers
  // Offsets of the other cells in the spanned block, excluding the source.
  std::vector<std::array<int, 3>> block;
};

std::vector<Move> make_moves(const Vec3& res) {
  std::vector<Move> moves;
  for (int dz = -1; dz <= 1; ++dz)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy && !dz) continue;
        Move m{dx, dy, dz, Vec3(dx * res.x(), dy * res.y(), dz * res.z()).norm(), {}};
        for (int sz = 0; sz <= (dz ? 1 : 0); ++sz)
          for (int sy = 0; sy <= (dy ? 1 : 0); ++sy)
            for (int sx = 0; sx <= (dx ? 1 : 0); ++sx) {
              if (!sx && !sy && !sz) continue;
              m.block.push_back({sx * dx, sy * dy, sz * dz});
            }
        moves.push_back(std::move(m));
      }
  return moves;
}

// Dense view of the search volume: occupancy copy, local indexing and the
// move table shared by every planner here.
class VolumeGraph {
 public:
  VolumeGraph(const OccupancyGrid& grid, const SearchVolume& vol)
      : grid_(grid),
        vol_(vol),
        nx_(vol.hi.ix - vol.lo.ix + 1),
        ny_(vol.hi.iy - vol.lo.iy + 1),
        nz_(vol.hi.iz - vol.lo.iz + 1),
        moves_(make_moves(grid.resolution())) {
    blocked_.resize(vol.size());
    for (int z = 0; z < nz_; ++z)
      for (int y = 0; y < ny_; ++y)
        for (int x = 0; x < nx_; ++x)
          blocked_[local(x, y, z)] =
              grid.occupied({vol.lo.ix + x, vol.lo.iy + y, vol.lo.iz + z}) ? 1 : 0;
  }

  std::size_t size() const { return blocked_.size(); }
  const std::vector<Move>& moves() const { return moves_; }
  const std::vector<std::uint8_t>& blocked() const { return blocked_; }

  std::size_t local(int x, int y, int z) const {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx_) *
               (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny_) * z);
  }
  std::size_t local(const GridIndex& g) const {
    return local(g.ix - vol_.lo.ix, g.iy - vol_.lo.iy, g.iz - vol_.lo.iz);
  }
  std::array<int, 3> coords(std::size_t k) const {
    const auto nx = static_cast<std::size_t>(nx_);
    const auto ny = static_cast<std::size_t>(ny_);
    return {static_cast<int>(k % nx), static_cast<int>((k / nx) % ny),
            static_cast<int>(k / (nx * ny))};
  }
  GridIndex global(const std::array<int, 3>& c) const {
    return {vol_.lo.ix + c[0], vol_.lo.iy + c[1], vol_.lo.iz + c[2]};
  }
  bool inside(int x, int y, int z) const {
    return x >= 0 && y >= 0 && z >= 0 && x < nx_ && y < ny_ && z < nz_;
  }

  // Target of the move if it stays inside the volume and clears the block.
  std::optional<std::size_t> step(const std::array<int, 3>& c, const Move& m) const {
    const int x = c[0] + m.dx, y = c[1] + m.dy, z = c[2] + m.dz;
    if (!inside(x, y, z)) return std::nullopt;
    for (const auto& b : m.block) {
      if (blocked_[local(c[0] + b[0], c[1] + b[1], c[2] + b[2])]) return std::nullopt;
    }
    return local(x, y, z);
  }

  Vec3 center(std::size_t k) const { return grid_.cell_center(global(coords(k))); }

 private:
  const OccupancyGrid& grid_;
  SearchVolume vol_;
  int nx_, ny_, nz_;
  std::vector<Move> moves_;
  std::vector<std::uint8_t> blocked_;
};

GridIndex require_cell(const OccupancyGrid& grid, const Vec3& p, const char* what) {
  const auto cell = grid.index_of(p);
  if (!cell) throw OutsideCoverage(std::string(what) + " outside grid coverage");
  return *cell;
}

bool neighbours(const GridIndex& a, const GridIndex& b) {
  const int dx = std::abs(a.ix - b.ix), dy = std::abs(a.iy - b.iy), dz = std::abs(a.iz - b.iz);
  return std::max({dx, dy, dz}) == 1;
}

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

}  // namespace

SearchVolume search_volume(const OccupancyGrid& grid, const GridIndex& init,
                           const GridIndex& goal, const SearchOptions& opts) {
  SearchVolume vol{{0, 0, 0}, {grid.dims().x() - 1, grid.dims().y() - 1, grid.dims().z() - 1}};
  if (opts.z_band) {
    if (*opts.z_band < 0) throw std::invalid_argument("z band must be >= 0");
    vol.lo.iz = std::max(0, std::min(init.iz, goal.iz) - *opts.z_band);
    vol.hi.iz = std::min(grid.dims().z() - 1, std::max(init.iz, goal.iz) + *opts.z_band);
  }
  return vol;
}

bool move_is_free(const OccupancyGrid& grid, const GridIndex& a, const GridIndex& b) {
  if (a == b || !neighbours(a, b) || !grid.contains(a) || !grid.contains(b)) return false;
  const int dx = b.ix - a.ix, dy = b.iy - a.iy, dz = b.iz - a.iz;
  for (int sz = 0; sz <= (dz ? 1 : 0); ++sz)
    for (int sy = 0; sy <= (dy ? 1 : 0); ++sy)
      for (int sx = 0; sx <= (dx ? 1 : 0); ++sx) {
        if (grid.occupied({a.ix + sx * dx, a.iy + sy * dy, a.iz + sz * dz})) return false;
      }
  return true;
}

double edge_cost(const GridIndex& a, const GridIndex& b, const OccupancyGrid& grid,
                 const PriorityMap& map, const PenaltyWeights& weights, double l_direct) {
  if (!neighbours(a, b)) throw std::invalid_argument("edge_cost needs 26-neighbours");
  if (!(l_direct > 0.0)) throw std::invalid_argument("l_direct must be > 0");
  if (!move_is_free(grid, a, b)) return kInfinity;
  const Vec3 ca = grid.cell_center(a);
  const Vec3 cb = grid.cell_center(b);
  const Vec3 mid = 0.5 * (ca + cb);
  const double p = map.sample(mid.x(), mid.y());
  return (cb - ca).norm() * (weights.length + weights.priority * (1.0 - p)) / l_direct;
}

std::vector<Vec3> cells_to_polyline(const OccupancyGrid& grid, const Vec3& init,
                                    const std::vector<GridIndex>& cells, const Vec3& goal) {
  std::vector<Vec3> pts;
  pts.reserve(cells.size() + 2);
  pts.push_back(init);
  for (const auto& c : cells) pts.push_back(grid.cell_center(c));
  pts.push_back(goal);
  return dedupe_consecutive(std::move(pts));
}

PlanResult plan_lp_astar(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                         const PriorityMap& map, const SearchWeights& sw,
                         const SearchOptions& opts) {
  const auto started = Clock::now();
  sw.weights.validate();
  if (!(sw.w_astar >= 0.0)) throw std::invalid_argument("w_astar must be >= 0");
  const GridIndex init_cell = require_cell(grid, init, "init");
  const GridIndex goal_cell = require_cell(grid, goal, "goal");
  if (grid.occupied(init_cell)) throw std::invalid_argument("init cell is occupied");
  const double l_direct = (goal - init).norm();
  if (l_direct == 0.0) throw std::invalid_argument("init and goal coincide");

  PlanResult result;
  if (grid.occupied(goal_cell)) {
    result.runtime_s = seconds_since(started);
    return result;
  }

  const SearchVolume vol = search_volume(grid, init_cell, goal_cell, opts);
  const VolumeGraph graph(grid, vol);
  const std::size_t start = graph.local(goal_cell);
  const std::size_t target = graph.local(init_cell);
  const Vec3 target_center = grid.cell_center(init_cell);
  const double h_scale =
      sw.w_astar * (sw.admissible_heuristic ? sw.weights.length : 1.0) / l_direct;
  const double cost_scale = 1.0 / l_direct;

  std::vector<double> g(graph.size(), kInfinity);
  std::vector<std::int32_t> parent(graph.size(), -1);
  std::vector<std::uint8_t> closed(graph.size(), 0);

  struct Entry {
    double f;
    double g;
    std::size_t node;
    bool operator>(const Entry& o) const {
      if (f != o.f) return f > o.f;
      return node > o.node;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  auto heuristic = [&](std::size_t k) {
    return h_scale == 0.0 ? 0.0 : h_scale * (target_center - graph.center(k)).norm();
  };

  g[start] = 0.0;
  open.push({heuristic(start), 0.0, start});
  while (!open.empty()) {
    const Entry top = open.top();
    open.pop();
    if (closed[top.node] || top.g > g[top.node]) continue;
    closed[top.node] = 1;
    ++result.expansions;
    if (top.node == target) break;

    const auto c = graph.coords(top.node);
    const Vec3 from = graph.center(top.node);
    for (const Move& m : graph.moves()) {
      const auto next = graph.step(c, m);
      if (!next || closed[*next]) continue;
      const Vec3 to = from + Vec3(m.dx, m.dy, m.dz).cwiseProduct(grid.resolution());
      const Vec3 mid = 0.5 * (from + to);
      const double p = map.sample(mid.x(), mid.y());
      const double w =
          m.length * (sw.weights.length + sw.weights.priority * (1.0 - p)) * cost_scale;
      const double candidate = top.g + w;
      if (candidate < g[*next]) {
        g[*next] = candidate;
        parent[*next] = static_cast<std::int32_t>(top.node);
        open.push({candidate + heuristic(*next), candidate, *next});
      }
    }
  }

  if (closed[target]) {
    result.surrogate_cost = g[target];
    for (auto k = static_cast<std::int32_t>(target); k != -1; k = parent[static_cast<std::size_t>(k)]) {
      result.cells.push_back(graph.global(graph.coords(static_cast<std::size_t>(k))));
    }
    result.trajectory = Trajectory(cells_to_polyline(grid, init, result.cells, goal));
  }
  result.runtime_s = seconds_since(started);
  return result;
}

std::size_t NavigationField::local(const GridIndex& i) const {
  const auto nx = static_cast<std::size_t>(volume_.hi.ix - volume_.lo.ix + 1);
  const auto ny = static_cast<std::size_t>(volume_.hi.iy - volume_.lo.iy + 1);
  return static_cast<std::size_t>(i.ix - volume_.lo.ix) +
         nx * (static_cast<std::size_t>(i.iy - volume_.lo.iy) +
               ny * static_cast<std::size_t>(i.iz - volume_.lo.iz));
}

std::int32_t NavigationField::value(const GridIndex& i) const {
  if (!volume_.contains(i)) return kUnreached;
  return values_[local(i)];
}

NavigationField ggwp_field(const OccupancyGrid& grid, const GridIndex& goal,
                           std::optional<GridIndex> stop_at, const SearchVolume& volume) {
  if (!grid.contains(goal)) throw OutsideCoverage("goal outside grid coverage");
  if (!volume.contains(goal)) throw std::invalid_argument("goal outside search volume");
  const VolumeGraph graph(grid, volume);

  NavigationField field;
  field.volume_ = volume;
  field.goal_ = goal;
  field.resolution_ = grid.resolution();
  field.values_.assign(graph.size(), NavigationField::kUnreached);
  field.blocked_ = graph.blocked();
  if (grid.occupied(goal)) return field;

  const std::size_t start = graph.local(goal);
  const std::optional<std::size_t> stop =
      stop_at && volume.contains(*stop_at) ? std::optional(graph.local(*stop_at)) : std::nullopt;

  std::deque<std::size_t> queue{start};
  field.values_[start] = 0;
  if (stop && *stop == start) return field;
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop_front();
    ++field.expansions_;
    const auto c = graph.coords(k);
    const std::int32_t next_value = field.values_[k] + 1;
    for (const Move& m : graph.moves()) {
      const auto next = graph.step(c, m);
      if (!next || field.values_[*next] != NavigationField::kUnreached) continue;
      field.values_[*next] = next_value;
      if (stop && *next == *stop) return field;
      queue.push_back(*next);
    }
  }
  return field;
}

std::optional<std::vector<GridIndex>> ggwp_extract(const NavigationField& field,
                                                   const GridIndex& init) {
  if (!field.reached(init)) return std::nullopt;
  const Vec3& res = field.resolution_;
  auto world = [&](const GridIndex& g) -> Vec3 { return Vec3(g.ix, g.iy, g.iz).cwiseProduct(res); };
  const Vec3 goal_pos = world(field.goal_);
  auto blocked = [&](const GridIndex& g) { return field.blocked_[field.local(g)] != 0; };

  std::vector<GridIndex> path{init};
  GridIndex cur = init;
  while (field.value(cur) > 0) {
    const std::int32_t here = field.value(cur);
    std::optional<GridIndex> best;
    std::int32_t best_value = here;
    double best_dist = kInfinity;
    for (int dz = -1; dz <= 1; ++dz)
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (!dx && !dy && !dz) continue;
          const GridIndex n{cur.ix + dx, cur.iy + dy, cur.iz + dz};
          const std::int32_t v = field.value(n);
          if (v >= here) continue;  // also skips unreached and out-of-volume
          bool clear = true;
          for (int sz = 0; sz <= (dz ? 1 : 0) && clear; ++sz)
            for (int sy = 0; sy <= (dy ? 1 : 0) && clear; ++sy)
              for (int sx = 0; sx <= (dx ? 1 : 0) && clear; ++sx)
                if (blocked({cur.ix + sx * dx, cur.iy + sy * dy, cur.iz + sz * dz})) clear = false;
          if (!clear) continue;
          const double dist = (world(n) - goal_pos).norm();
          const bool better = !best || v < best_value ||
                              (v == best_value && (dist < best_dist ||
                                                   (dist == best_dist && n < *best)));
          if (better) {
            best = n;
            best_value = v;
            best_dist = dist;
          }
        }
    if (!best) return std::nullopt;  // cannot happen on a consistent field
    cur = *best;
    path.push_back(cur);
  }
  return path;
}

PlanResult plan_ggwp(const Vec3& init, const Vec3& goal, const OccupancyGrid& grid,
                     const SearchOptions& opts) {
  const auto started = Clock::now();
  const GridIndex init_cell = require_cell(grid, init, "init");
  const GridIndex goal_cell = require_cell(grid, goal, "goal");
  if (init == goal) throw std::invalid_argument("init and goal coincide");

  PlanResult result;
  const SearchVolume vol = search_volume(grid, init_cell, goal_cell, opts);
  const NavigationField field = ggwp_field(grid, goal_cell, init_cell, vol);
  result.expansions = field.expansions();
  if (auto cells = ggwp_extract(field, init_cell)) {
    result.surrogate_cost = static_cast<double>(field.value(init_cell));
    result.cells = std::move(*cells);
    result.trajectory = Trajectory(cells_to_polyline(grid, init, result.cells, goal));
  }
  result.runtime_s = seconds_since(started);
  return result;
}

}  // namespace ltp
