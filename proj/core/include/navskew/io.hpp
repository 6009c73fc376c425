#pragma once

#include <navskew/sweep.hpp>

#include <optional>
#include <string>
#include <vector>

namespace navskew {

/// All artifact files use one numeric format: shortest decimal within
/// 9 significant digits, so identical runs produce identical bytes.
std::string format_g9(double v);

enum class OutputKind { Cells, Summary, Heatmap };

/// Rendering parameters for an SVG heatmap output.  The color scale spans
/// [scale_min, scale_max] when given, else the data range.
struct HeatmapSpec {
  int width = 800;
  int height = 600;
  std::optional<double> scale_min;
  std::optional<double> scale_max;
};

struct OutputSpec {
  OutputKind kind = OutputKind::Summary;
  std::string path;
  HeatmapSpec heatmap; // used by Heatmap outputs only
};

/// A declarative run description: the sweep to perform plus where results
/// go.  `motion` is kept when the displacement was derived from
/// velocity x timing-skew, so artifacts can echo how it was specified.
struct RunConfig {
  SweepConfig sweep;
  std::optional<MotionSpec> motion;
  std::vector<OutputSpec> outputs;
};

/// Parses a JSON run-config document.  Keys: rig.d_cm, mode ("2d"|"3d"),
/// convention ("midpoint"|"basepoint"), range.{x,y,z}.{min,max},
/// range.step_cm, exactly one of displacement.{dx,dy,dz}_cm or
/// motion.{vx,vy,vz}_cm_s + motion.dt_s, optional slice.{axis,value},
/// outputs[].{kind,path,...}.  Throws ConfigError with the offending key.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

/// Verifies every output lands in an existing writable directory; done
/// before any compute so a long sweep cannot fail at the final write.
void check_outputs_writable(const std::vector<OutputSpec>& outputs);

/// CSV with header x_cm,y_cm,z_cm,exact_err_cm,approx_err_cm,ex_cm,ey_cm,ez_cm
/// and one row per cell in the cells' own order.
std::string cells_to_csv(const std::vector<GridCell>& cells);

/// Parses a cells CSV produced by cells_to_csv (used by `report`).
std::vector<GridCell> cells_from_csv_file(const std::string& path);

/// Summary JSON embedding the resolved run config, so the file is
/// self-describing.  Deterministic key order and float formatting.
std::string summary_to_json(const RunConfig& config, const SweepSummary& summary);

/// Summary JSON for a summary recomputed from an existing cells CSV; the
/// config echo records the source file instead of sweep parameters.
std::string summary_to_json(const std::string& source_csv_path,
                            const SweepSummary& summary);

/// Single-evaluation report as JSON (the `error` command output).
std::string error_report_to_json(const CameraRig& rig, const ErrorReport& report,
                                 const std::optional<MotionSpec>& motion);

/// CSV of per-point exact-vs-approx gaps (the `approx-check` table).
std::string gap_table_to_csv(const ApproxComparison& comparison);

/// Renders a planar cell grid (one axis constant across all cells) as a
/// discrete-ramp heatmap of the exact error.  Throws ConfigError when the
/// cells do not form a plane.
std::string heatmap_to_svg(const std::vector<GridCell>& cells,
                           const HeatmapSpec& spec);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe partial content.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace navskew
