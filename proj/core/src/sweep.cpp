#include <navskew/sweep.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace navskew {

std::size_t axis_count(double min, double max, double step) {
  if (min == max) {
    return 1;
  }
  // Nudge so ranges that are an exact multiple of the step keep their
  // endpoint despite representation error (e.g. 0.1 steps).
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

namespace {

struct GridAxis {
  double min = 0.0;
  double step = 1.0;
  std::size_t count = 1;

  double value(std::size_t i) const { return min + static_cast<double>(i) * step; }
};

struct Grid {
  GridAxis x, y, z;
};

std::string point_text(double x, double y, double z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.9g, %.9g, %.9g)", x, y, z);
  return buf;
}

void validate_config(const SweepConfig& cfg, bool require_nonzero_disp) {
  const OperatingRange& r = cfg.range;
  if (!(r.step > 0.0)) {
    throw std::invalid_argument("grid step must be positive");
  }
  if (r.x_min > r.x_max || r.y_min > r.y_max || r.z_min > r.z_max) {
    throw std::invalid_argument("grid range min must not exceed max");
  }
  if (!(r.y_min > 0.0)) {
    throw std::invalid_argument("grid must lie strictly in front of the baseline (y_min > 0)");
  }
  if (cfg.mode == SweepMode::TwoD) {
    if (r.z_min != 0.0 || r.z_max != 0.0) {
      throw std::invalid_argument("2d sweeps live in the z = 0 plane; drop the z range or use 3d");
    }
    if (cfg.displacement.dz != 0.0) {
      throw std::invalid_argument("2d sweeps require a displacement with dz = 0");
    }
  }
  if (cfg.slice) {
    const char axis = cfg.slice->axis;
    if (axis != 'x' && axis != 'y' && axis != 'z') {
      throw std::invalid_argument("slice axis must be one of x, y, z");
    }
    if (axis == 'z' && cfg.mode == SweepMode::TwoD) {
      throw std::invalid_argument("a z slice is meaningless for a 2d sweep");
    }
    if (axis == 'y' && !(cfg.slice->value > 0.0)) {
      throw std::invalid_argument("a y slice must sit strictly in front of the baseline");
    }
  }
  if (require_nonzero_disp && cfg.displacement.magnitude() == 0.0) {
    throw std::invalid_argument("sweep displacement must be nonzero");
  }
}

Grid make_grid(const SweepConfig& cfg) {
  const OperatingRange& r = cfg.range;
  Grid g;
  g.x = {r.x_min, r.step, axis_count(r.x_min, r.x_max, r.step)};
  g.y = {r.y_min, r.step, axis_count(r.y_min, r.y_max, r.step)};
  if (cfg.mode == SweepMode::ThreeD) {
    g.z = {r.z_min, r.step, axis_count(r.z_min, r.z_max, r.step)};
  } else {
    g.z = {0.0, r.step, 1};
  }
  if (cfg.slice) {
    GridAxis pinned{cfg.slice->value, r.step, 1};
    switch (cfg.slice->axis) {
      case 'x': g.x = pinned; break;
      case 'y': g.y = pinned; break;
      default:  g.z = pinned; break;
    }
  }
  return g;
}

GridCell evaluate_cell(const SweepConfig& cfg, double x, double y, double z) {
  if (cfg.mode == SweepMode::TwoD) {
    const ErrorReport rep =
        localization_error_2d(cfg.rig, {x, y}, cfg.displacement, cfg.convention);
    return {{x, y, 0.0}, rep.error_magnitude, rep.approx_error_magnitude, rep.error_vector};
  }
  const ErrorReport rep =
      localization_error_3d(cfg.rig, {x, y, z}, cfg.displacement, cfg.convention);
  return {{x, y, z}, rep.error_magnitude, rep.approx_error_magnitude, rep.error_vector};
}

// First failure wins by cell index so the reported abort point does not
// depend on thread scheduling.
struct FailureSlot {
  std::mutex mutex;
  bool failed = false;
  std::size_t cell_index = 0;
  Point3 point;
  std::string message;
};

void fill_rows(const SweepConfig& cfg, const Grid& g, std::size_t row_begin,
               std::size_t row_end, std::vector<GridCell>& cells,
               std::atomic<bool>& abort, FailureSlot& failure) {
  for (std::size_t row = row_begin; row < row_end; ++row) {
    if (abort.load(std::memory_order_relaxed)) {
      return;
    }
    const std::size_t ix = row / g.y.count;
    const std::size_t iy = row % g.y.count;
    const double x = g.x.value(ix);
    const double y = g.y.value(iy);
    for (std::size_t iz = 0; iz < g.z.count; ++iz) {
      const double z = g.z.value(iz);
      const std::size_t index = row * g.z.count + iz;
      try {
        cells[index] = evaluate_cell(cfg, x, y, z);
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(failure.mutex);
        if (!failure.failed || index < failure.cell_index) {
          failure.failed = true;
          failure.cell_index = index;
          failure.point = {x, y, z};
          failure.message = e.what();
        }
        abort.store(true, std::memory_order_relaxed);
        return;
      }
    }
  }
}

std::vector<GridCell> compute_cells(const SweepConfig& cfg, unsigned workers) {
  const Grid g = make_grid(cfg);
  const std::size_t rows = g.x.count * g.y.count;
  std::vector<GridCell> cells(rows * g.z.count);

  std::size_t n = workers == 0 ? std::thread::hardware_concurrency() : workers;
  if (n == 0) {
    n = 1;
  }
  n = std::min(n, rows);

  std::atomic<bool> abort{false};
  FailureSlot failure;

  if (n <= 1) {
    fill_rows(cfg, g, 0, rows, cells, abort, failure);
  } else {
    // Static contiguous partition: each worker owns a fixed block of
    // (x, y) rows and writes disjoint slots of the preallocated vector,
    // so the result is identical for any worker count.
    std::vector<std::thread> pool;
    pool.reserve(n);
    const std::size_t chunk = (rows + n - 1) / n;
    for (std::size_t w = 0; w < n; ++w) {
      const std::size_t lo = std::min(w * chunk, rows);
      const std::size_t hi = std::min(lo + chunk, rows);
      if (lo >= hi) {
        break;
      }
      pool.emplace_back([&, lo, hi] { fill_rows(cfg, g, lo, hi, cells, abort, failure); });
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }

  if (failure.failed) {
    throw SweepError("sweep aborted at grid point " +
                     point_text(failure.point.x, failure.point.y, failure.point.z) + ": " +
                     failure.message);
  }
  return cells;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config, unsigned workers) {
  validate_config(config, /*require_nonzero_disp=*/true);
  SweepResult result;
  result.cells = compute_cells(config, workers);
  result.summary = summarize_cells(result.cells);
  return result;
}

SweepSummary summarize_cells(const std::vector<GridCell>& cells) {
  if (cells.empty()) {
    throw EmptySweep("summary of an empty cell list");
  }
  SweepSummary s;
  s.cell_count = cells.size();
  s.max_error = cells.front().exact_error;
  s.min_error = cells.front().exact_error;
  double sum = 0.0;
  for (const GridCell& c : cells) {
    s.max_error = std::max(s.max_error, c.exact_error);
    s.min_error = std::min(s.min_error, c.exact_error);
    sum += c.exact_error;
    if (c.exact_error > 1e-9) {
      const double gap = std::abs(c.exact_error - c.approx_error) / c.exact_error;
      s.max_approx_vs_exact_gap = std::max(s.max_approx_vs_exact_gap, gap);
    }
  }
  s.mean_error = sum / static_cast<double>(cells.size());
  s.argmax_points = find_argmax(cells);
  return s;
}

std::vector<Point3> find_argmax(const std::vector<GridCell>& cells) {
  if (cells.empty()) {
    throw EmptySweep("argmax of an empty cell list");
  }
  double max_error = cells.front().exact_error;
  for (const GridCell& c : cells) {
    max_error = std::max(max_error, c.exact_error);
  }
  std::vector<Point3> points;
  for (const GridCell& c : cells) {
    if (max_error - c.exact_error <= kArgmaxTolerance) {
      points.push_back(c.point);
    }
  }
  return points;
}

ApproxComparison compare_exact_vs_approx(const SweepConfig& config, unsigned workers) {
  if (config.convention != ReferenceConvention::BasePoint) {
    throw std::invalid_argument(
        "exact-vs-approx comparison requires the base-point convention; "
        "the first-order formulas predict errors from the base point");
  }
  validate_config(config, /*require_nonzero_disp=*/false);

  ApproxComparison cmp;
  if (config.displacement.magnitude() == 0.0) {
    return cmp; // every error is identically zero: nothing to compare
  }

  const std::vector<GridCell> cells = compute_cells(config, workers);
  cmp.rows.reserve(cells.size());
  for (const GridCell& c : cells) {
    if (!(c.exact_error > 1e-9)) {
      continue;
    }
    const double gap = std::abs(c.exact_error - c.approx_error) / c.exact_error;
    cmp.rows.push_back({c.point, c.exact_error, c.approx_error, gap});
    if (gap > cmp.worst_gap) {
      cmp.worst_gap = gap;
      cmp.worst_point = c.point;
    }
  }
  return cmp;
}

} // namespace navskew
