#include "ltp/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace ltp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SlabHit {
  double t = kInf;
  int axis = -1;
  double face = 0.0;
};

// Nearest non-negative crossing of the box boundary along origin + t*dir.
std::optional<SlabHit> ray_box(const Box& box, const Vec3& o, const Vec3& d) {
  double t_near = -kInf;
  double t_far = kInf;
  int near_axis = -1;
  int far_axis = -1;
  double near_face = 0.0;
  double far_face = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (o[k] < box.min[k] || o[k] > box.max[k]) return std::nullopt;
      continue;
    }
    double t1 = (box.min[k] - o[k]) / d[k];
    double t2 = (box.max[k] - o[k]) / d[k];
    double f1 = box.min[k];
    double f2 = box.max[k];
    if (t1 > t2) {
      std::swap(t1, t2);
      std::swap(f1, f2);
    }
    if (t1 > t_near) {
      t_near = t1;
      near_axis = k;
      near_face = f1;
    }
    if (t2 < t_far) {
      t_far = t2;
      far_axis = k;
      far_face = f2;
    }
  }
  if (t_near > t_far || t_far < 0.0) return std::nullopt;
  if (t_near >= 0.0) return SlabHit{t_near, near_axis, near_face};
  // Origin inside the box: the ray sees the inner side of the far face.
  return SlabHit{t_far, far_axis, far_face};
}

std::optional<RayHit> cast_among(const Scene& scene, const std::vector<std::size_t>& candidates,
                                 const Vec3& origin, const Vec3& dir, double max_range) {
  std::optional<RayHit> best;
  double best_t = max_range;
  for (std::size_t b : candidates) {
    const auto hit = ray_box(scene.boxes[b], origin, dir);
    if (!hit || hit->t > best_t) continue;
    if (best && hit->t == best_t) continue;
    Vec3 p = origin + hit->t * dir;
    p[hit->axis] = hit->face;
    best = RayHit{p, hit->t, SurfaceKind::box, b};
    best_t = hit->t;
  }
  if (dir.z() < 0.0 && origin.z() >= scene.ground_z) {
    const double t = (scene.ground_z - origin.z()) / dir.z();
    if (t <= best_t && (!best || t < best_t)) {
      Vec3 p = origin + t * dir;
      p.z() = scene.ground_z;
      best = RayHit{p, t, SurfaceKind::ground, 0};
    }
  }
  return best;
}

double point_box_distance(const Box& box, const Vec3& p) {
  const Vec3 q = p.cwiseMax(box.min).cwiseMin(box.max);
  return (p - q).norm();
}

}  // namespace

void Scene::validate() const {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const Box& b = boxes[i];
    if (!b.min.allFinite() || !b.max.allFinite() || !(b.max.array() > b.min.array()).all()) {
      throw std::invalid_argument("box " + std::to_string(i) + " has non-positive extent");
    }
    if (b.min.z() < ground_z) {
      throw std::invalid_argument("box " + std::to_string(i) + " extends below ground");
    }
  }
  if (!(bounds.max.array() >= bounds.min.array()).all()) {
    throw std::invalid_argument("scene bounds are inverted");
  }
}

LidarConfig LidarConfig::lattice(int azimuths, int elevations, double min_elevation,
                                 double max_elevation, double max_range) {
  if (azimuths < 1 || elevations < 1) throw std::invalid_argument("empty lidar lattice");
  LidarConfig cfg;
  cfg.max_range = max_range;
  cfg.directions.reserve(static_cast<std::size_t>(azimuths) * elevations);
  for (int e = 0; e < elevations; ++e) {
    const double el = elevations == 1
                          ? 0.5 * (min_elevation + max_elevation)
                          : min_elevation + (max_elevation - min_elevation) * e / (elevations - 1);
    for (int a = 0; a < azimuths; ++a) {
      const double az = 2.0 * std::numbers::pi * a / azimuths;
      cfg.directions.emplace_back(std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                                  std::sin(el));
    }
  }
  return cfg;
}

LidarConfig LidarConfig::standard() {
  const double thirty = std::numbers::pi / 6.0;
  return lattice(360, 9, -thirty, thirty, 50.0);
}

void LidarConfig::validate() const {
  if (!(max_range > 0.0)) throw std::invalid_argument("lidar max_range must be > 0");
  for (const auto& d : directions) {
    if (std::abs(d.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("lidar directions must be unit vectors");
    }
  }
}

std::optional<RayHit> cast_ray(const Scene& scene, const Vec3& origin, const Vec3& dir,
                               double max_range) {
  std::vector<std::size_t> all(scene.boxes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return cast_among(scene, all, origin, dir, max_range);
}

OccupancyGrid sense_and_update(const Scene& scene, OccupancyGrid grid, const SensorPose& pose,
                               const LidarConfig& cfg) {
  std::vector<std::size_t> nearby;
  for (std::size_t i = 0; i < scene.boxes.size(); ++i) {
    if (point_box_distance(scene.boxes[i], pose.position) <= cfg.max_range) nearby.push_back(i);
  }
  for (const Vec3& local : cfg.directions) {
    const Vec3 dir = pose.orientation * local;
    const auto hit = cast_among(scene, nearby, pose.position, dir, cfg.max_range);
    if (!hit) continue;
    if (const auto cell = grid.index_of(hit->point)) grid.set_occupied(*cell);
  }
  return grid;
}

void mark_surfaces(const Scene& scene, OccupancyGrid& grid) {
  const Vec3 origin = grid.origin();
  const Vec3 res = grid.resolution();
  const auto& dims = grid.dims();
  auto cell_of = [&](int k, double v) {
    return static_cast<int>(std::floor((v - origin[k]) / res[k]));
  };
  auto mark_range = [&](int lo_x, int hi_x, int lo_y, int hi_y, int lo_z, int hi_z) {
    lo_x = std::max(lo_x, 0);
    lo_y = std::max(lo_y, 0);
    lo_z = std::max(lo_z, 0);
    hi_x = std::min(hi_x, dims.x() - 1);
    hi_y = std::min(hi_y, dims.y() - 1);
    hi_z = std::min(hi_z, dims.z() - 1);
    for (int z = lo_z; z <= hi_z; ++z)
      for (int y = lo_y; y <= hi_y; ++y)
        for (int x = lo_x; x <= hi_x; ++x) grid.set_occupied({x, y, z});
  };
  for (const Box& b : scene.boxes) {
    const int x0 = cell_of(0, b.min.x()), x1 = cell_of(0, b.max.x());
    const int y0 = cell_of(1, b.min.y()), y1 = cell_of(1, b.max.y());
    const int z0 = cell_of(2, b.min.z()), z1 = cell_of(2, b.max.z());
    mark_range(x0, x0, y0, y1, z0, z1);
    mark_range(x1, x1, y0, y1, z0, z1);
    mark_range(x0, x1, y0, y0, z0, z1);
    mark_range(x0, x1, y1, y1, z0, z1);
    mark_range(x0, x1, y0, y1, z0, z0);
    mark_range(x0, x1, y0, y1, z1, z1);
  }
  const int zg = cell_of(2, scene.ground_z);
  mark_range(0, dims.x() - 1, 0, dims.y() - 1, zg, zg);
}

Scene generate_scene(std::uint64_t seed, const SceneParams& params) {
  if (params.min_footprint <= 0.0 || params.max_footprint < params.min_footprint ||
      params.min_height <= 0.0 || params.max_height < params.min_height ||
      params.density_per_km2 < 0.0 || params.hollow_size <= 0.0 || params.street_gap < 0.0) {
    throw std::invalid_argument("scene parameter ranges must be positive and ordered");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  Scene scene;
  scene.ground_z = params.ground_z;
  scene.bounds = params.bounds;

  for (const Vec3& q : params.hollow_points) {
    if (q.z() <= params.ground_z) {
      throw std::invalid_argument("hollow point must lie above the ground");
    }
    const double s = params.hollow_size;
    Box box;
    for (int k = 0; k < 2; ++k) {
      box.min[k] = q[k] - uniform(0.2, 0.8) * s;
      box.max[k] = box.min[k] + s;
    }
    box.min.z() = params.ground_z;
    box.max.z() = q.z() + uniform(0.2, 0.8) * s;
    scene.boxes.push_back(box);
  }

  const Vec2 extent = params.bounds.extent();
  const double area_km2 = extent.x() * extent.y() / 1e6;
  const auto wanted = static_cast<int>(std::lround(params.density_per_km2 * area_km2));
  const std::size_t fixed = scene.boxes.size();
  for (int n = 0; n < wanted; ++n) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      const double w = uniform(params.min_footprint, params.max_footprint);
      const double d = uniform(params.min_footprint, params.max_footprint);
      const double h = uniform(params.min_height, params.max_height);
      if (w > extent.x() || d > extent.y()) break;
      Box box;
      box.min = Vec3(uniform(params.bounds.min.x(), params.bounds.max.x() - w),
                     uniform(params.bounds.min.y(), params.bounds.max.y() - d), params.ground_z);
      box.max = box.min + Vec3(w, d, h);
      const double g = params.street_gap;
      const bool clear = std::none_of(
          scene.boxes.begin() + static_cast<std::ptrdiff_t>(fixed), scene.boxes.end(),
          [&](const Box& o) {
            return box.min.x() < o.max.x() + g && o.min.x() < box.max.x() + g &&
                   box.min.y() < o.max.y() + g && o.min.y() < box.max.y() + g;
          });
      if (clear) {
        scene.boxes.push_back(box);
        break;
      }
    }
  }
  return scene;
}

bool segment_hits_box(const Box& box, const Vec3& a, const Vec3& b) {
  // Slightly shrunk so that grazing a face is not a collision.
  constexpr double kShrink = 1e-6;
  const Vec3 lo = box.min.array() + kShrink;
  const Vec3 hi = box.max.array() - kShrink;
  const Vec3 d = b - a;
  double t0 = 0.0;
  double t1 = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (d[k] == 0.0) {
      if (a[k] <= lo[k] || a[k] >= hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - a[k]) / d[k];
    double tb = (hi[k] - a[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return t0 < t1;
}

bool segment_hits_scene(const Scene& scene, const Vec3& a, const Vec3& b) {
  return std::any_of(scene.boxes.begin(), scene.boxes.end(),
                     [&](const Box& box) { return segment_hits_box(box, a, b); });
}

}  // namespace ltp
