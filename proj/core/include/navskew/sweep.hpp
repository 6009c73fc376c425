#pragma once

#include <navskew/timing.hpp>

#include <optional>
#include <vector>

namespace navskew {

// Cells whose exact error is within this of the sweep maximum count as
// tied for the argmax.
inline constexpr double kArgmaxTolerance = 1e-12;

/// Inclusive axis-aligned grid bounds with a common step.  A degenerate
/// axis (min == max) pins that coordinate.  y_min must be positive: the
/// grid has to stay in front of the baseline.
struct OperatingRange {
  double x_min = -70.0, x_max = 70.0;
  double y_min = 90.0, y_max = 240.0;
  double z_min = -65.0, z_max = 65.0;
  double step = 1.0;
};

enum class SweepMode { TwoD, ThreeD };

/// Optional restriction of one axis to a single value (e.g. the z = 50
/// plane of a 3-D range).
struct AxisSlice {
  char axis = 'z'; // 'x', 'y' or 'z'
  double value = 0.0;
};

struct SweepConfig {
  CameraRig rig{25.0};
  SweepMode mode = SweepMode::TwoD;
  OperatingRange range;
  Displacement displacement;
  ReferenceConvention convention = ReferenceConvention::Midpoint;
  std::optional<AxisSlice> slice;
};

/// One evaluated grid point.  error_vector holds the per-axis exact error
/// (reconstructed minus reference).
struct GridCell {
  Point3 point;
  double exact_error = 0.0;
  double approx_error = 0.0;
  Vec3 error_vector;
};

struct SweepSummary {
  std::size_t cell_count = 0;
  double max_error = 0.0;
  double min_error = 0.0;
  double mean_error = 0.0;
  std::vector<Point3> argmax_points;
  /// Worst relative |exact - approx| / exact over cells with exact > 1e-9.
  double max_approx_vs_exact_gap = 0.0;
};

struct SweepResult {
  std::vector<GridCell> cells; // row-major: x outermost, then y, then z
  SweepSummary summary;
};

/// One row of an exact-vs-approximate comparison table.
struct GapRow {
  Point3 point;
  double exact_error = 0.0;
  double approx_error = 0.0;
  double relative_gap = 0.0;
};

struct ApproxComparison {
  std::vector<GapRow> rows;
  double worst_gap = 0.0;
  Point3 worst_point;
};

/// Number of grid points along one axis of `range`.
std::size_t axis_count(double min, double max, double step);

/// Evaluates the timing error over the whole grid.  `workers` = 0 picks
/// the hardware concurrency; results are identical for any worker count.
/// Throws std::invalid_argument for a bad config and SweepError when some
/// cell's geometry fails (the message names the offending point).
SweepResult run_sweep(const SweepConfig& config, unsigned workers = 0);

/// All cells tied (within kArgmaxTolerance) for the largest exact error,
/// in row-major grid order.  Throws EmptySweep for an empty cell list.
std::vector<Point3> find_argmax(const std::vector<GridCell>& cells);

/// Aggregates an existing cell list (e.g. one reloaded from CSV) exactly
/// as run_sweep would.  Throws EmptySweep for an empty list.
SweepSummary summarize_cells(const std::vector<GridCell>& cells);

/// Tabulates the relative gap between exact and first-order errors over
/// the grid.  Requires the BasePoint convention (the approximation only
/// predicts base-point errors); cells with exact error <= 1e-9 are
/// skipped.  A zero displacement yields an empty table.
ApproxComparison compare_exact_vs_approx(const SweepConfig& config,
                                         unsigned workers = 0);

} // namespace navskew
