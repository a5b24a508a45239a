#include <benchmark/benchmark.h>

#include "airfilm/presets.hpp"
#include "airfilm/scenario.hpp"

using namespace airfilm;

static sim::Scenario drifting_bodies(int count) {
  sim::Scenario sc;
  sc.name = "bench";
  sc.dt_s = 1e-3;
  sc.t_end_s = 1.0;
  sc.output_interval_s = 1.0;
  sc.map.bounds = {-100.0, -100.0, 100.0, 100.0};
  sc.map.regions.push_back({Rect{0.0, -100.0, 100.0, 100.0}, false, 0.2});
  for (int i = 0; i < count; ++i) {
    sim::Body2D b;
    b.id = "b" + std::to_string(i);
    b.mass_kg = 0.5;
    b.inertia_kg_m2 = 1e-3;
    b.pos = {-50.0 + i * 0.1, 0.0};
    b.vel = {0.05, 0.01};
    sc.bodies.push_back(std::move(b));
  }
  return sc;
}

static void StepThroughput(benchmark::State& state) {
  const sim::Scenario sc = drifting_bodies(static_cast<int>(state.range(0)));
  sim::SimState s = sc.initial_state();
  for (auto _ : state) {
    s = sim::step(s, sc.map, sc.dt_s);
    benchmark::DoNotOptimize(s.bodies.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(StepThroughput)->RangeMultiplier(4)->Range(1, 256);

static void SimulateSecond(benchmark::State& state) {
  const sim::Scenario sc = drifting_bodies(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto traj = sim::simulate(sc);
    benchmark::DoNotOptimize(traj.samples.data());
  }
}
BENCHMARK(SimulateSecond)->Arg(2)->Arg(16);

static void MagnetSeparationPreset(benchmark::State& state) {
  sim::PresetParams params;
  params.t_end_s = 2.0;
  for (auto _ : state) {
    auto run = sim::run_preset(sim::Preset::magnet_separation, params);
    benchmark::DoNotOptimize(run.trajectory.samples.data());
  }
}
BENCHMARK(MagnetSeparationPreset);

BENCHMARK_MAIN();
