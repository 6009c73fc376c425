// Command-line front end: triangulate points, evaluate timing-skew
// localization errors, run grid sweeps, and check the first-order error
// approximation against the exact pipeline.

#include <navskew/io.hpp>
#include <navskew/sweep.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace navskew;

constexpr double kLargeDisplacementWarn = 1.0; // cm

void warn_if_large(const Displacement& disp) {
  if (disp.magnitude() > kLargeDisplacementWarn) {
    std::cerr << "warning: displacement magnitude " << format_g9(disp.magnitude())
              << " cm exceeds " << format_g9(kLargeDisplacementWarn)
              << " cm; first-order error fields are unreliable at this scale\n";
  }
}

std::string join_g9(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += format_g9(values[i]);
  }
  return out;
}

Displacement displacement_from_values(const std::vector<double>& v) {
  Displacement d;
  d.dx = v.size() > 0 ? v[0] : 0.0;
  d.dy = v.size() > 1 ? v[1] : 0.0;
  d.dz = v.size() > 2 ? v[2] : 0.0;
  return d;
}

const std::map<std::string, ReferenceConvention> kConventionNames{
    {"midpoint", ReferenceConvention::Midpoint},
    {"basepoint", ReferenceConvention::BasePoint},
};

// Options shared by `error`'s two displacement sources and the sweep
// overrides: an explicit displacement, or velocity x timing skew.
struct MotionInput {
  std::vector<double> disp_values;
  std::vector<double> velocity_values;
  double dt = 0.0;
  CLI::Option* disp_opt = nullptr;
  CLI::Option* motion_opt = nullptr;
  CLI::Option* dt_opt = nullptr;

  void attach(CLI::App* cmd) {
    disp_opt = cmd->add_option("--disp", disp_values,
                               "displacement dx,dy[,dz] between the two exposures (cm)")
                   ->delimiter(',')
                   ->expected(2, 3);
    motion_opt = cmd->add_option("--motion", velocity_values,
                                 "marker velocity vx,vy[,vz] (cm/s); needs --dt")
                     ->delimiter(',')
                     ->expected(2, 3);
    dt_opt = cmd->add_option("--dt", dt, "inter-camera timing skew (s)");
    disp_opt->excludes(motion_opt);
    motion_opt->needs(dt_opt);
  }

  bool given() const { return disp_opt->count() > 0 || motion_opt->count() > 0; }

  // Returns the displacement plus the motion spec when one was used.
  std::pair<Displacement, std::optional<MotionSpec>> resolve() const {
    if (motion_opt->count() > 0) {
      MotionSpec spec;
      spec.velocity = {velocity_values.size() > 0 ? velocity_values[0] : 0.0,
                       velocity_values.size() > 1 ? velocity_values[1] : 0.0,
                       velocity_values.size() > 2 ? velocity_values[2] : 0.0};
      spec.timing_skew = dt;
      return {displacement_from_motion(spec), spec};
    }
    return {displacement_from_values(disp_values), std::nullopt};
  }
};

void write_outputs(const RunConfig& config, const SweepResult& result) {
  std::vector<std::string> written;
  try {
    for (const OutputSpec& out : config.outputs) {
      std::string content;
      switch (out.kind) {
        case OutputKind::Cells: content = cells_to_csv(result.cells); break;
        case OutputKind::Summary: content = summary_to_json(config, result.summary); break;
        case OutputKind::Heatmap: content = heatmap_to_svg(result.cells, out.heatmap); break;
      }
      atomic_write_file(out.path, content);
      written.push_back(out.path);
    }
  } catch (...) {
    // Leave no partial artifact set behind.
    for (const std::string& path : written) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
    throw;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-camera optical navigation simulator: stereo triangulation and "
               "timing-skew localization error analysis"};
  app.set_version_flag("--version", "navskew 0.1.0");
  app.require_subcommand(1);

  int exit_override = 0;

  // ---- locate ------------------------------------------------------------
  auto* locate = app.add_subcommand("locate", "Convert between marker positions and camera angles");
  locate->require_subcommand(1);

  struct {
    double d = 25.0;
    std::vector<double> point;
  } locate_angles_opts;
  auto* locate_angles =
      locate->add_subcommand("angles", "Per-camera sight-line angles of a marker position");
  locate_angles->add_option("--d", locate_angles_opts.d, "camera half-separation (cm)")
      ->capture_default_str();
  locate_angles
      ->add_option("--point", locate_angles_opts.point, "marker x,y (planar) or x,y,z (cm)")
      ->required()
      ->delimiter(',')
      ->expected(2, 3);
  locate_angles->callback([&] {
    const CameraRig rig(locate_angles_opts.d);
    const auto& p = locate_angles_opts.point;
    if (p.size() == 2) {
      const AngleSet2 a = angles_from_point_2d(rig, {p[0], p[1]});
      std::cout << "alpha1=" << format_g9(a.alpha1) << " beta1=" << format_g9(a.beta1)
                << " alpha2=" << format_g9(a.alpha2) << " beta2=" << format_g9(a.beta2)
                << "\n";
    } else {
      const AngleSet3 a = angles_from_point_3d(rig, {p[0], p[1], p[2]});
      std::cout << "alpha1=" << format_g9(a.alpha1) << " beta1=" << format_g9(a.beta1)
                << " gamma1=" << format_g9(a.gamma1) << " alpha2=" << format_g9(a.alpha2)
                << " beta2=" << format_g9(a.beta2) << " gamma2=" << format_g9(a.gamma2)
                << "\n";
    }
  });

  struct {
    double d = 25.0;
    double alpha1 = 0.0, beta1 = 0.0, gamma1 = 0.0;
    double alpha2 = 0.0, beta2 = 0.0, gamma2 = 0.0;
    CLI::Option* beta1_opt = nullptr;
    CLI::Option* gamma1_opt = nullptr;
    CLI::Option* beta2_opt = nullptr;
    CLI::Option* gamma2_opt = nullptr;
  } locate_point_opts;
  auto* locate_point =
      locate->add_subcommand("point", "Triangulated marker position from per-camera angles");
  locate_point->add_option("--d", locate_point_opts.d, "camera half-separation (cm)")
      ->capture_default_str();
  locate_point->add_option("--alpha1", locate_point_opts.alpha1, "camera 1 angle with +X (rad)")
      ->required();
  locate_point->add_option("--alpha2", locate_point_opts.alpha2, "camera 2 angle with +X (rad)")
      ->required();
  locate_point_opts.beta1_opt =
      locate_point->add_option("--beta1", locate_point_opts.beta1, "camera 1 angle with +Y (rad)");
  locate_point_opts.gamma1_opt =
      locate_point->add_option("--gamma1", locate_point_opts.gamma1, "camera 1 angle with +Z (rad)");
  locate_point_opts.beta2_opt =
      locate_point->add_option("--beta2", locate_point_opts.beta2, "camera 2 angle with +Y (rad)");
  locate_point_opts.gamma2_opt =
      locate_point->add_option("--gamma2", locate_point_opts.gamma2, "camera 2 angle with +Z (rad)");
  locate_point->callback([&] {
    const auto& o = locate_point_opts;
    const CameraRig rig(o.d);
    const unsigned extra = o.beta1_opt->count() + o.gamma1_opt->count() + o.beta2_opt->count() +
                           o.gamma2_opt->count();
    if (extra == 0) {
      const Point2 p = point_from_angles_2d(rig, AngleSet2::from_alphas(o.alpha1, o.alpha2));
      std::cout << join_g9({p.x, p.y}) << "\n";
    } else if (extra == 4) {
      const AngleSet3 a{o.alpha1, o.beta1, o.gamma1, o.alpha2, o.beta2, o.gamma2};
      const Point3 p = point_from_angles_3d(rig, a);
      std::cout << join_g9({p.x, p.y, p.z}) << "\n";
    } else {
      throw ConfigError("spatial triangulation needs all of --beta1 --gamma1 --beta2 --gamma2; "
                        "planar needs only the two alphas");
    }
  });

  // ---- error -------------------------------------------------------------
  struct {
    double d = 25.0;
    std::vector<double> point;
    MotionInput motion;
    ReferenceConvention convention = ReferenceConvention::Midpoint;
  } error_opts;
  auto* error_cmd = app.add_subcommand(
      "error", "Exact and first-order localization error for one marker position");
  error_cmd->add_option("--d", error_opts.d, "camera half-separation (cm)")
      ->capture_default_str();
  error_cmd->add_option("--point", error_opts.point, "marker x,y (planar) or x,y,z (cm)")
      ->required()
      ->delimiter(',')
      ->expected(2, 3);
  error_opts.motion.attach(error_cmd);
  error_cmd
      ->add_option("--conv", error_opts.convention,
                   "reference convention: midpoint (default) or basepoint")
      ->transform(CLI::CheckedTransformer(kConventionNames, CLI::ignore_case));
  error_cmd->callback([&] {
    auto& o = error_opts;
    if (!o.motion.given()) {
      throw ConfigError("provide a displacement with --disp, or --motion together with --dt");
    }
    const auto [disp, motion] = o.motion.resolve();
    warn_if_large(disp);
    const CameraRig rig(o.d);
    ErrorReport report;
    if (o.point.size() == 2) {
      if (disp.dz != 0.0) {
        throw ConfigError("a planar --point needs a planar displacement (dz = 0)");
      }
      report = localization_error_2d(rig, {o.point[0], o.point[1]}, disp, o.convention);
    } else {
      report = localization_error_3d(rig, {o.point[0], o.point[1], o.point[2]}, disp,
                                     o.convention);
    }
    std::cout << error_report_to_json(rig, report, motion);
  });

  // ---- sweep -------------------------------------------------------------
  struct {
    std::string config_path;
    double d = 0.0;
    double step = 0.0;
    MotionInput motion;
    ReferenceConvention convention = ReferenceConvention::Midpoint;
    unsigned workers = 0;
    CLI::Option* d_opt = nullptr;
    CLI::Option* step_opt = nullptr;
    CLI::Option* conv_opt = nullptr;
  } sweep_opts;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate the localization error over a gridded volume");
  sweep_cmd->add_option("config", sweep_opts.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  sweep_opts.d_opt =
      sweep_cmd->add_option("--d", sweep_opts.d, "override camera half-separation (cm)");
  sweep_opts.step_opt =
      sweep_cmd->add_option("--step", sweep_opts.step, "override grid step (cm)");
  sweep_opts.motion.attach(sweep_cmd);
  sweep_opts.conv_opt =
      sweep_cmd
          ->add_option("--conv", sweep_opts.convention, "override the reference convention")
          ->transform(CLI::CheckedTransformer(kConventionNames, CLI::ignore_case));
  sweep_cmd->add_option("--workers", sweep_opts.workers,
                        "worker threads (0 = hardware concurrency)");
  sweep_cmd->callback([&] {
    auto& o = sweep_opts;
    RunConfig config = load_run_config(o.config_path);
    if (o.d_opt->count() > 0) {
      config.sweep.rig = CameraRig(o.d);
    }
    if (o.step_opt->count() > 0) {
      config.sweep.range.step = o.step;
    }
    if (o.motion.given()) {
      const auto [disp, motion] = o.motion.resolve();
      config.sweep.displacement = disp;
      config.motion = motion;
    }
    if (o.conv_opt->count() > 0) {
      config.sweep.convention = o.convention;
    }
    warn_if_large(config.sweep.displacement);
    check_outputs_writable(config.outputs);
    const SweepResult result = run_sweep(config.sweep, o.workers);
    if (config.outputs.empty()) {
      std::cout << summary_to_json(config, result.summary);
    } else {
      write_outputs(config, result);
    }
  });

  // ---- approx-check ------------------------------------------------------
  struct {
    std::string config_path;
    double d = 25.0;
    double step = 1.0;
    std::string mode = "2d";
    MotionInput motion;
    double tolerance = 0.01;
    std::string out_path;
    unsigned workers = 0;
    CLI::Option* config_opt = nullptr;
    CLI::Option* d_opt = nullptr;
    CLI::Option* step_opt = nullptr;
    CLI::Option* mode_opt = nullptr;
  } check_opts;
  auto* check_cmd = app.add_subcommand(
      "approx-check",
      "Compare exact errors against the first-order prediction over the operating range");
  check_opts.config_opt =
      check_cmd->add_option("config", check_opts.config_path, "optional JSON run configuration")
          ->check(CLI::ExistingFile);
  check_opts.d_opt =
      check_cmd->add_option("--d", check_opts.d, "camera half-separation (cm)")
          ->capture_default_str();
  check_opts.step_opt =
      check_cmd->add_option("--step", check_opts.step, "grid step (cm)")->capture_default_str();
  check_opts.mode_opt = check_cmd->add_option("--mode", check_opts.mode, "2d or 3d")
                            ->check(CLI::IsMember({"2d", "3d"}))
                            ->capture_default_str();
  check_opts.motion.attach(check_cmd);
  check_cmd
      ->add_option("--tolerance", check_opts.tolerance,
                   "worst acceptable relative gap (exit 3 beyond this)")
      ->capture_default_str();
  check_cmd->add_option("--out", check_opts.out_path,
                        "write the gap table CSV here instead of stdout");
  check_cmd->add_option("--workers", check_opts.workers,
                        "worker threads (0 = hardware concurrency)");
  check_cmd->callback([&] {
    auto& o = check_opts;

    SweepConfig cfg;
    if (o.config_opt->count() > 0) {
      RunConfig file_config = load_run_config(o.config_path);
      cfg = file_config.sweep;
    } else {
      cfg.rig = CameraRig(o.d);
      cfg.mode = o.mode == "3d" ? SweepMode::ThreeD : SweepMode::TwoD;
      cfg.range = OperatingRange{};
      if (cfg.mode == SweepMode::TwoD) {
        cfg.range.z_min = cfg.range.z_max = 0.0;
      }
      cfg.range.step = o.step;
      cfg.displacement = {0.01, 0.0, 0.0};
    }
    if (o.d_opt->count() > 0) {
      cfg.rig = CameraRig(o.d);
    }
    if (o.step_opt->count() > 0) {
      cfg.range.step = o.step;
    }
    if (o.mode_opt->count() > 0 && o.config_opt->count() > 0) {
      throw ConfigError("--mode only applies to the built-in default range; set mode in the config");
    }
    if (o.motion.given()) {
      cfg.displacement = o.motion.resolve().first;
    }
    if (cfg.displacement.magnitude() == 0.0) {
      throw ConfigError("the approximation check needs a nonzero displacement");
    }
    // The first-order formulas predict base-point errors; the comparison
    // only makes sense in that frame.
    cfg.convention = ReferenceConvention::BasePoint;
    warn_if_large(cfg.displacement);

    const ApproxComparison comparison = compare_exact_vs_approx(cfg, o.workers);
    const std::string table = gap_table_to_csv(comparison);
    const std::string verdict =
        "worst relative gap " + format_g9(comparison.worst_gap) + " at (" +
        format_g9(comparison.worst_point.x) + ", " + format_g9(comparison.worst_point.y) +
        ", " + format_g9(comparison.worst_point.z) + "); tolerance " +
        format_g9(o.tolerance) + (comparison.worst_gap > o.tolerance ? " EXCEEDED" : " ok") +
        "\n";
    if (o.out_path.empty()) {
      std::cout << table;
      std::cerr << verdict;
    } else {
      atomic_write_file(o.out_path, table);
      std::cout << verdict;
    }
    if (comparison.worst_gap > o.tolerance) {
      exit_override = 3;
    }
  });

  // ---- report ------------------------------------------------------------
  struct {
    std::string cells_path;
    std::string summary_path;
    std::string heatmap_path;
    HeatmapSpec heatmap;
  } report_opts;
  auto* report_cmd = app.add_subcommand(
      "report", "Regenerate a summary and/or heatmap from an existing cells CSV");
  report_cmd->add_option("--cells", report_opts.cells_path, "cells CSV produced by sweep")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--summary", report_opts.summary_path, "write summary JSON here");
  report_cmd->add_option("--heatmap", report_opts.heatmap_path, "write an SVG heatmap here");
  report_cmd->add_option("--width", report_opts.heatmap.width, "heatmap width (px)")
      ->capture_default_str();
  report_cmd->add_option("--height", report_opts.heatmap.height, "heatmap height (px)")
      ->capture_default_str();
  report_cmd->callback([&] {
    auto& o = report_opts;
    const std::vector<GridCell> cells = cells_from_csv_file(o.cells_path);
    if (cells.empty()) {
      throw ConfigError("cells CSV contains no rows: " + o.cells_path);
    }
    const SweepSummary summary = summarize_cells(cells);
    const std::string summary_json = summary_to_json(o.cells_path, summary);
    if (o.summary_path.empty() && o.heatmap_path.empty()) {
      std::cout << summary_json;
      return;
    }
    if (!o.summary_path.empty()) {
      atomic_write_file(o.summary_path, summary_json);
    }
    if (!o.heatmap_path.empty()) {
      atomic_write_file(o.heatmap_path, heatmap_to_svg(cells, o.heatmap));
    }
  });

  // ---- dispatch ----------------------------------------------------------
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_override;
}
