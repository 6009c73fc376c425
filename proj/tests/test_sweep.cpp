#include <doctest.h>

#include <navskew/io.hpp>
#include <navskew/sweep.hpp>
#include <navskew/timing.hpp>

#include <cmath>
#include <cstddef>

using namespace navskew;

namespace {

SweepConfig planar_default() {
  SweepConfig cfg;
  cfg.mode = SweepMode::TwoD;
  cfg.range.z_min = 0.0;
  cfg.range.z_max = 0.0;
  cfg.displacement = {0.01, 0.0, 0.0};
  return cfg;
}

} // namespace

TEST_CASE("axis_count") {
  CHECK(axis_count(-70.0, 70.0, 1.0) == 141);
  CHECK(axis_count(90.0, 240.0, 1.0) == 151);
  CHECK(axis_count(-65.0, 65.0, 1.0) == 131);
  CHECK(axis_count(5.0, 5.0, 1.0) == 1);
  CHECK(axis_count(0.0, 1.0, 0.3) == 4);  // 0, 0.3, 0.6, 0.9
  CHECK(axis_count(0.0, 0.9, 0.3) == 4);  // inclusive upper bound
}

TEST_CASE("single-cell sweep") {
  SweepConfig cfg = planar_default();
  cfg.range.x_min = cfg.range.x_max = 70.0;
  cfg.range.y_min = cfg.range.y_max = 240.0;
  const SweepResult r = run_sweep(cfg, 1);
  REQUIRE(r.cells.size() == 1);
  CHECK(r.summary.cell_count == 1);
  const double expected =
      localization_error_2d(cfg.rig, {70.0, 240.0}, cfg.displacement, cfg.convention)
          .error_magnitude;
  CHECK(r.cells[0].exact_error == expected);
  CHECK(r.summary.max_error == expected);
  CHECK(r.summary.min_error == expected);
  CHECK(r.summary.mean_error == expected);
  REQUIRE(r.summary.argmax_points.size() == 1);
  CHECK(r.summary.argmax_points[0].x == 70.0);
  CHECK(r.summary.argmax_points[0].y == 240.0);
}

TEST_CASE("coarse planar sweep matches the per-point evaluator") {
  SweepConfig cfg = planar_default();
  cfg.range.step = 10.0;
  const SweepResult r = run_sweep(cfg);
  CHECK(r.cells.size() == 15 * 16); // x: -70..70 step 10, y: 90..240 step 10
  CHECK(r.summary.cell_count == r.cells.size());

  // Every cell reproduces the standalone evaluation bit-for-bit.
  for (const GridCell& cell : r.cells) {
    const ErrorReport rep = localization_error_2d(
        cfg.rig, {cell.point.x, cell.point.y}, cfg.displacement, cfg.convention);
    CHECK(cell.exact_error == rep.error_magnitude);
    CHECK(cell.approx_error == rep.approx_error_magnitude);
    CHECK(cell.error_vector.x == rep.error_vector.x);
    CHECK(cell.error_vector.y == rep.error_vector.y);
    CHECK(cell.error_vector.z == rep.error_vector.z);
  }

  // For a +x displacement the worst spot is the far right corner.
  REQUIRE(r.summary.argmax_points.size() == 1);
  CHECK(r.summary.argmax_points[0].x == 70.0);
  CHECK(r.summary.argmax_points[0].y == 240.0);
  CHECK(r.summary.argmax_points[0].z == 0.0);

  // Grid order is row-major with x outermost.
  CHECK(r.cells.front().point.x == -70.0);
  CHECK(r.cells.front().point.y == 90.0);
  CHECK(r.cells[1].point.x == -70.0);
  CHECK(r.cells[1].point.y == 100.0);
  CHECK(r.cells.back().point.x == 70.0);
  CHECK(r.cells.back().point.y == 240.0);
}

TEST_CASE("summary recomputation from cells") {
  SweepConfig cfg = planar_default();
  cfg.range.step = 10.0;
  cfg.displacement = {0.0, 0.01, 0.0};
  const SweepResult r = run_sweep(cfg);

  double max = 0.0, min = 1e300, sum = 0.0;
  for (const GridCell& c : r.cells) {
    max = std::max(max, c.exact_error);
    min = std::min(min, c.exact_error);
    sum += c.exact_error;
  }
  CHECK(std::abs(r.summary.max_error - max) <= 1e-12);
  CHECK(std::abs(r.summary.min_error - min) <= 1e-12);
  CHECK(std::abs(r.summary.mean_error - sum / static_cast<double>(r.cells.size())) <= 1e-12);

  // A pure +y displacement is worst close to the cameras.
  REQUIRE_FALSE(r.summary.argmax_points.empty());
  for (const Point3& p : r.summary.argmax_points) {
    CHECK(p.y == 90.0);
  }

  // summarize_cells on the same list reproduces the summary exactly.
  const SweepSummary again = summarize_cells(r.cells);
  CHECK(again.cell_count == r.summary.cell_count);
  CHECK(again.max_error == r.summary.max_error);
  CHECK(again.min_error == r.summary.min_error);
  CHECK(again.mean_error == r.summary.mean_error);
  CHECK(again.max_approx_vs_exact_gap == r.summary.max_approx_vs_exact_gap);
  REQUIRE(again.argmax_points.size() == r.summary.argmax_points.size());
}

TEST_CASE("finer grids contain the coarse maxima") {
  SweepConfig coarse = planar_default();
  coarse.range.step = 30.0;
  SweepConfig fine = coarse;
  fine.range.step = 10.0;
  const double coarse_max = run_sweep(coarse).summary.max_error;
  const double fine_max = run_sweep(fine).summary.max_error;
  // Every coarse grid point is also a fine grid point here, so the fine
  // maximum can only be at least as large.
  CHECK(fine_max >= coarse_max - 1e-15);
}

TEST_CASE("argmax reports ties in grid order") {
  SweepConfig cfg;
  cfg.mode = SweepMode::ThreeD;
  cfg.range = {-70.0, -70.0, 90.0, 90.0, -5.0, 5.0, 5.0};
  cfg.displacement = {0.0, 0.01, 0.0};
  const SweepResult r = run_sweep(cfg, 1);
  REQUIRE(r.cells.size() == 3);
  // A pure y displacement never bends z and the error is z-symmetric, so
  // all three z cells tie.
  REQUIRE(r.summary.argmax_points.size() == 3);
  CHECK(r.summary.argmax_points[0].z == -5.0);
  CHECK(r.summary.argmax_points[1].z == 0.0);
  CHECK(r.summary.argmax_points[2].z == 5.0);
}

TEST_CASE("worker count never changes the result") {
  SweepConfig cfg = planar_default();
  cfg.range.step = 7.0;
  cfg.displacement = {0.006, 0.008, 0.0};
  const SweepResult serial = run_sweep(cfg, 1);
  const SweepResult quad = run_sweep(cfg, 4);
  const SweepResult automatic = run_sweep(cfg, 0);

  REQUIRE(serial.cells.size() == quad.cells.size());
  REQUIRE(serial.cells.size() == automatic.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].exact_error == quad.cells[i].exact_error);
    CHECK(serial.cells[i].exact_error == automatic.cells[i].exact_error);
    CHECK(serial.cells[i].approx_error == quad.cells[i].approx_error);
    CHECK(serial.cells[i].error_vector.x == quad.cells[i].error_vector.x);
  }
  CHECK(serial.summary.max_error == quad.summary.max_error);
  CHECK(serial.summary.mean_error == quad.summary.mean_error);

  // Byte-level check through the CSV serializer.
  CHECK(cells_to_csv(serial.cells) == cells_to_csv(quad.cells));
  CHECK(cells_to_csv(serial.cells) == cells_to_csv(automatic.cells));
}

TEST_CASE("a failing cell aborts the sweep and names the point") {
  SweepConfig cfg = planar_default();
  cfg.range.x_min = cfg.range.x_max = 0.0;
  cfg.range.y_min = cfg.range.y_max = 1.0;
  cfg.displacement = {0.0, -2.0, 0.0}; // displaced exposure lands behind the rig
  CHECK_THROWS_WITH_AS(run_sweep(cfg, 1),
                       doctest::Contains("(0, 1, 0)"), SweepError);
}

TEST_CASE("empty cell lists are rejected") {
  CHECK_THROWS_AS(find_argmax({}), EmptySweep);
  CHECK_THROWS_AS(summarize_cells({}), EmptySweep);
}

TEST_CASE("config validation") {
  SweepConfig good = planar_default();
  CHECK_NOTHROW(run_sweep([&] {
    SweepConfig c = good;
    c.range.x_min = c.range.x_max = 0.0;
    c.range.y_min = c.range.y_max = 100.0;
    return c;
  }(), 1));

  const auto rejects = [&](auto mutate) {
    SweepConfig c = good;
    mutate(c);
    CHECK_THROWS_AS(run_sweep(c, 1), std::invalid_argument);
  };

  rejects([](SweepConfig& c) { c.range.step = 0.0; });
  rejects([](SweepConfig& c) { c.range.step = -1.0; });
  rejects([](SweepConfig& c) { c.range.x_min = 10.0, c.range.x_max = -10.0; });
  rejects([](SweepConfig& c) { c.range.y_min = 0.0; });
  rejects([](SweepConfig& c) { c.range.y_min = -5.0, c.range.y_max = -1.0; });
  // Planar sweeps must stay in the z = 0 plane.
  rejects([](SweepConfig& c) { c.range.z_min = -5.0, c.range.z_max = 5.0; });
  rejects([](SweepConfig& c) { c.displacement.dz = 0.01; });
  // Slices must name a real axis and stay in front of the baseline.
  rejects([](SweepConfig& c) { c.slice = AxisSlice{'w', 1.0}; });
  rejects([](SweepConfig& c) { c.slice = AxisSlice{'y', 0.0}; });
  rejects([](SweepConfig& c) { c.slice = AxisSlice{'z', 10.0}; }); // planar mode
}

TEST_CASE("slices pin one axis of a spatial sweep") {
  SweepConfig cfg;
  cfg.mode = SweepMode::ThreeD;
  cfg.range.step = 10.0;
  cfg.displacement = {0.01, 0.0, 0.0};
  cfg.slice = AxisSlice{'y', 240.0};
  const SweepResult r = run_sweep(cfg);
  const std::size_t nx = axis_count(cfg.range.x_min, cfg.range.x_max, cfg.range.step);
  const std::size_t nz = axis_count(cfg.range.z_min, cfg.range.z_max, cfg.range.step);
  CHECK(r.cells.size() == nx * nz);
  for (const GridCell& c : r.cells) {
    CHECK(c.point.y == 240.0);
  }
}

TEST_CASE("exact-vs-approx comparison table") {
  SweepConfig cfg = planar_default();
  cfg.range.step = 10.0;
  cfg.convention = ReferenceConvention::BasePoint;

  const ApproxComparison cmp = compare_exact_vs_approx(cfg);
  CHECK_FALSE(cmp.rows.empty());
  CHECK(cmp.worst_gap < 0.01); // first-order prediction is sub-percent here
  for (const GapRow& row : cmp.rows) {
    const double recomputed = std::abs(row.exact_error - row.approx_error) / row.exact_error;
    CHECK(std::abs(row.relative_gap - recomputed) <= 1e-12);
  }

  // A displacement far outside the small-error regime must blow the gap up.
  SweepConfig big = cfg;
  big.displacement = {1.0, 0.0, 0.0};
  CHECK(compare_exact_vs_approx(big).worst_gap > 0.01);

  // The table is only meaningful against the base point.
  SweepConfig mid = cfg;
  mid.convention = ReferenceConvention::Midpoint;
  CHECK_THROWS_AS(compare_exact_vs_approx(mid), std::invalid_argument);

  // No displacement, nothing to compare.
  SweepConfig none = cfg;
  none.displacement = {0.0, 0.0, 0.0};
  const ApproxComparison empty = compare_exact_vs_approx(none);
  CHECK(empty.rows.empty());
  CHECK(empty.worst_gap == 0.0);
}
