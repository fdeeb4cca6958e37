#pragma once

// Shared urban scene for the microbenchmarks: a generated 400 m block with
// the full 200 x 200 x 40 grid mapped omnisciently around its center.

#include <ltp/bench.hpp>
#include <ltp/occupancy.hpp>
#include <ltp/priority.hpp>
#include <ltp/scene.hpp>

namespace ltp::benchfx {

struct City {
  Scene scene;
  OccupancyGrid grid;
  PriorityMap map;
  Vec3 center;
};

inline const City& city() {
  static const City c = [] {
    City out;
    SceneParams sp;
    sp.bounds = {{0.0, 0.0}, {400.0, 400.0}};
    out.scene = generate_scene(11, sp);
    out.center = {200.3, 200.3, 50.2};
    GridSpec g;
    g.center = out.center;
    out.grid = OccupancyGrid(g);
    mark_surfaces(out.scene, out.grid);
    out.map = binary_priority(generate_ground_mask(11, out.scene, MaskParams{}));
    return out;
  }();
  return c;
}

/// Nearest point to `p` (searching outward in the xy plane) whose cell is free.
inline Vec3 free_near(const City& c, Vec3 p) {
  for (int r = 0; r < 50; ++r) {
    for (int dx = -r; dx <= r; ++dx) {
      for (int dy = -r; dy <= r; ++dy) {
        const Vec3 q = p + Vec3(2.0 * dx, 2.0 * dy, 0.0);
        const auto i = c.grid.index_of(q);
        if (i && !c.grid.occupied(*i)) return q;
      }
    }
  }
  return p;
}

}  // namespace ltp::benchfx
