// Grid maintenance: one lidar scan, recentering, segment traversal.

#include <benchmark/benchmark.h>

#include <ltp/occupancy.hpp>
#include <ltp/scene.hpp>

#include "fixture.hpp"

namespace {

using namespace ltp;

void lidar_scan(benchmark::State& state) {
  const auto& c = benchfx::city();
  const LidarConfig lidar = LidarConfig::standard();
  const SensorPose pose{benchfx::free_near(c, c.center)};
  for (auto _ : state) {
    OccupancyGrid g(c.grid.spec());
    g = sense_and_update(c.scene, std::move(g), pose, lidar);
    benchmark::DoNotOptimize(g.occupied_count());
  }
  state.counters["rays"] = static_cast<double>(lidar.directions.size());
}
BENCHMARK(lidar_scan)->Unit(benchmark::kMillisecond);

void recenter(benchmark::State& state) {
  const auto& c = benchfx::city();
  const double shift = static_cast<double>(state.range(0));
  for (auto _ : state) {
    OccupancyGrid g = c.grid.recentered(c.center + Vec3(shift, shift * 0.5, 0.0));
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(recenter)->Arg(2)->Arg(30)->Unit(benchmark::kMillisecond);

void traverse(benchmark::State& state) {
  const auto& c = benchfx::city();
  const Vec3 a = c.center + Vec3(-150.3, -120.7, -20.1);
  const Vec3 b = c.center + Vec3(140.9, 130.2, 30.3);
  std::size_t cells = 0;
  for (auto _ : state) {
    cells = 0;
    c.grid.traverse(a, b, [&](const GridIndex&) {
      ++cells;
      return true;
    });
    benchmark::DoNotOptimize(cells);
  }
  state.counters["cells"] = static_cast<double>(cells);
}
BENCHMARK(traverse);

}  // namespace
