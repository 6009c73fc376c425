#include <navskew/sweep.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace navskew;

const CameraRig kRig(25.0);

void BM_AnglesFromPoint2d(benchmark::State& state) {
  const Point2 p{37.0, 181.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(angles_from_point_2d(kRig, p));
  }
}
BENCHMARK(BM_AnglesFromPoint2d);

void BM_PointFromAngles2d(benchmark::State& state) {
  const AngleSet2 a = angles_from_point_2d(kRig, {37.0, 181.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(point_from_angles_2d(kRig, a));
  }
}
BENCHMARK(BM_PointFromAngles2d);

void BM_AnglesFromPoint3d(benchmark::State& state) {
  const Point3 p{37.0, 181.0, -42.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(angles_from_point_3d(kRig, p));
  }
}
BENCHMARK(BM_AnglesFromPoint3d);

void BM_PointFromAngles3d(benchmark::State& state) {
  const AngleSet3 a = angles_from_point_3d(kRig, {37.0, 181.0, -42.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(point_from_angles_3d(kRig, a));
  }
}
BENCHMARK(BM_PointFromAngles3d);

void BM_LocalizationError2d(benchmark::State& state) {
  const Point2 p{70.0, 240.0};
  const Displacement disp{0.01, 0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        localization_error_2d(kRig, p, disp, ReferenceConvention::Midpoint));
  }
}
BENCHMARK(BM_LocalizationError2d);

void BM_LocalizationError3d(benchmark::State& state) {
  const Point3 p{70.0, 240.0, -65.0};
  const Displacement disp{0.01, 0.0, 0.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        localization_error_3d(kRig, p, disp, ReferenceConvention::Midpoint));
  }
}
BENCHMARK(BM_LocalizationError3d);

void BM_PlanarSweep(benchmark::State& state) {
  SweepConfig cfg;
  cfg.mode = SweepMode::TwoD;
  cfg.range.z_min = cfg.range.z_max = 0.0;
  cfg.displacement = {0.01, 0.0, 0.0};
  const unsigned workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(cfg, workers));
  }
  state.counters["cells"] = 141.0 * 151.0;
}
BENCHMARK(BM_PlanarSweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_SpatialSliceSweep(benchmark::State& state) {
  SweepConfig cfg;
  cfg.mode = SweepMode::ThreeD;
  cfg.displacement = {0.01, 0.0, 0.0};
  cfg.slice = AxisSlice{'y', 240.0};
  const unsigned workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(cfg, workers));
  }
  state.counters["cells"] = 141.0 * 131.0;
}
BENCHMARK(BM_SpatialSliceSweep)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
