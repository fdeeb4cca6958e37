// Single plan calls on the 200 x 200 x 40 grid, goal 50 m or 150 m away.

#include <benchmark/benchmark.h>

#include <ltp/planner.hpp>

#include "fixture.hpp"

namespace {

using namespace ltp;

void run_planner(benchmark::State& state, PlannerKind kind) {
  const auto& c = benchfx::city();
  const double reach = static_cast<double>(state.range(0));
  const Vec3 init = benchfx::free_near(c, c.center);
  const Vec3 goal = benchfx::free_near(c, c.center + Vec3(reach * 0.8, reach * 0.6, 0.0));
  PlannerConfig cfg;
  cfg.kind = kind;
  cfg.weights = {1.0, 2.0};
  std::size_t expansions = 0;
  int reached = 0;
  for (auto _ : state) {
    const PlanResult r = plan_local(cfg, init, goal, c.grid, c.map);
    benchmark::DoNotOptimize(r.surrogate_cost);
    expansions = r.expansions;
    reached = r.reached();
  }
  state.counters["expansions"] = static_cast<double>(expansions);
  state.counters["reached"] = reached;
}

BENCHMARK_CAPTURE(run_planner, lp_dijkstra, PlannerKind::lp_dijkstra)
    ->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_planner, lp_astar, PlannerKind::lp_astar)
    ->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_planner, wlp_astar, PlannerKind::wlp_astar)
    ->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_planner, ggwp, PlannerKind::ggwp)
    ->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(run_planner, bezier, PlannerKind::bezier)
    ->Arg(50)->Arg(150)->Unit(benchmark::kMillisecond);

}  // namespace
