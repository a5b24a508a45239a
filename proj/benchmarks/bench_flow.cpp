#include <benchmark/benchmark.h>

#include "airfilm/platform_design.hpp"
#include "airfilm/porous_flow.hpp"

using namespace airfilm;

static void FieldSampling(benchmark::State& state) {
  flow::PorousPlate plate;
  plate.plan_width_m = 0.3;
  plate.plan_depth_m = 0.3;
  plate.hole_spacing_m = 0.030;
  plate.thickness_m = 0.030;
  const double pitch = plate.plan_width_m / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto field = flow::sample_surface_field(plate, pitch);
    benchmark::DoNotOptimize(field.ratio.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(FieldSampling)->RangeMultiplier(2)->Range(16, 128)->Complexity();

static void CoveringSweep(benchmark::State& state) {
  design::GlassPuck glass;
  glass.size_m = 0.080;
  const int divisions = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto range = design::min_max_covered_holes(glass, 0.030, divisions);
    benchmark::DoNotOptimize(range.min_holes);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(CoveringSweep)->RangeMultiplier(2)->Range(50, 400)->Complexity();

static void SupplyLayout(benchmark::State& state) {
  flow::PorousPlate plate;
  plate.plan_width_m = 2.0;
  plate.plan_depth_m = 2.0;
  plate.hole_spacing_m = 0.010;
  for (auto _ : state) {
    auto units = design::supply_unit_layout(plate);
    benchmark::DoNotOptimize(units.data());
  }
}
BENCHMARK(SupplyLayout);

BENCHMARK_MAIN();
