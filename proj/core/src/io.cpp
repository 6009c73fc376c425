#include <navskew/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace navskew {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_g9(double v) {
  if (v == 0.0) {
    return "0"; // collapse signed zeros so artifacts stay byte-stable
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

namespace {

// JSON artifacts carry the same 9-significant-digit values as the CSVs:
// round through the text form before handing the number to the emitter.
double g9_value(double v) {
  const std::string s = format_g9(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

ordered_json point_json(const Point3& p) {
  return ordered_json::array({g9_value(p.x), g9_value(p.y), g9_value(p.z)});
}

ordered_json vec_json(const Vec3& v) {
  return ordered_json::array({g9_value(v.x), g9_value(v.y), g9_value(v.z)});
}

const char* convention_name(ReferenceConvention c) {
  return c == ReferenceConvention::Midpoint ? "midpoint" : "basepoint";
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  throw ConfigError("config key '" + key + "' " + why);
}

const ordered_json* find_member(const ordered_json& obj, const char* name) {
  const auto it = obj.find(name);
  return it == obj.end() ? nullptr : &*it;
}

double need_number(const ordered_json& obj, const std::string& parent, const char* name) {
  const ordered_json* m = find_member(obj, name);
  const std::string key = parent.empty() ? name : parent + "." + name;
  if (m == nullptr) {
    bad_key(key, "is required");
  }
  if (!m->is_number()) {
    bad_key(key, "must be a number");
  }
  return m->get<double>();
}

double number_or(const ordered_json& obj, const std::string& parent, const char* name,
                 double fallback) {
  const ordered_json* m = find_member(obj, name);
  if (m == nullptr) {
    return fallback;
  }
  if (!m->is_number()) {
    bad_key(parent.empty() ? name : parent + "." + name, "must be a number");
  }
  return m->get<double>();
}

void reject_unknown_keys(const ordered_json& obj, const std::string& parent,
                         std::initializer_list<const char*> known) {
  for (const auto& item : obj.items()) {
    const bool ok = std::any_of(known.begin(), known.end(), [&](const char* k) {
      return item.key() == k;
    });
    if (!ok) {
      bad_key(parent.empty() ? item.key() : parent + "." + item.key(), "is not recognized");
    }
  }
}

void parse_axis_range(const ordered_json& range, const char* axis, double& min, double& max) {
  const ordered_json* m = find_member(range, axis);
  if (m == nullptr) {
    return; // keep default
  }
  const std::string parent = std::string("range.") + axis;
  if (!m->is_object()) {
    bad_key(parent, "must be an object with min and max");
  }
  reject_unknown_keys(*m, parent, {"min", "max"});
  min = need_number(*m, parent, "min");
  max = need_number(*m, parent, "max");
}

OutputSpec parse_output(const ordered_json& entry, std::size_t index) {
  const std::string parent = "outputs[" + std::to_string(index) + "]";
  if (!entry.is_object()) {
    bad_key(parent, "must be an object");
  }
  reject_unknown_keys(entry, parent,
                      {"kind", "path", "format", "width", "height", "scale_min", "scale_max"});

  OutputSpec out;
  const ordered_json* kind = find_member(entry, "kind");
  if (kind == nullptr || !kind->is_string()) {
    bad_key(parent + ".kind", "must be one of cells, summary, heatmap");
  }
  const std::string kind_name = kind->get<std::string>();
  const char* expected_format = nullptr;
  if (kind_name == "cells") {
    out.kind = OutputKind::Cells;
    expected_format = "csv";
  } else if (kind_name == "summary") {
    out.kind = OutputKind::Summary;
    expected_format = "json";
  } else if (kind_name == "heatmap") {
    out.kind = OutputKind::Heatmap;
    expected_format = "svg";
  } else {
    bad_key(parent + ".kind", "must be one of cells, summary, heatmap");
  }

  const ordered_json* path = find_member(entry, "path");
  if (path == nullptr || !path->is_string() || path->get<std::string>().empty()) {
    bad_key(parent + ".path", "must be a non-empty string");
  }
  out.path = path->get<std::string>();

  if (const ordered_json* format = find_member(entry, "format")) {
    if (!format->is_string() || format->get<std::string>() != expected_format) {
      bad_key(parent + ".format", std::string("must be '") + expected_format + "' for kind " +
                                      kind_name);
    }
  }

  if (out.kind == OutputKind::Heatmap) {
    const double width = number_or(entry, parent, "width", 800.0);
    const double height = number_or(entry, parent, "height", 600.0);
    if (width < 100 || height < 100 || width != std::floor(width) ||
        height != std::floor(height)) {
      bad_key(parent + ".width/height", "must be integers of at least 100 pixels");
    }
    out.heatmap.width = static_cast<int>(width);
    out.heatmap.height = static_cast<int>(height);
    if (find_member(entry, "scale_min")) {
      out.heatmap.scale_min = need_number(entry, parent, "scale_min");
    }
    if (find_member(entry, "scale_max")) {
      out.heatmap.scale_max = need_number(entry, parent, "scale_max");
    }
  } else if (find_member(entry, "width") || find_member(entry, "height") ||
             find_member(entry, "scale_min") || find_member(entry, "scale_max")) {
    bad_key(parent, "has heatmap-only settings on a non-heatmap output");
  }
  return out;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  reject_unknown_keys(doc, "",
                      {"rig", "mode", "convention", "range", "displacement", "motion", "slice",
                       "outputs"});

  RunConfig cfg;

  const ordered_json* rig = find_member(doc, "rig");
  if (rig == nullptr || !rig->is_object()) {
    bad_key("rig", "must be an object with d_cm");
  }
  reject_unknown_keys(*rig, "rig", {"d_cm"});
  try {
    cfg.sweep.rig = CameraRig(need_number(*rig, "rig", "d_cm"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config key 'rig.d_cm' is invalid: ") + e.what());
  }

  cfg.sweep.mode = SweepMode::TwoD;
  if (const ordered_json* mode = find_member(doc, "mode")) {
    const std::string name = mode->is_string() ? mode->get<std::string>() : "";
    if (name == "2d") {
      cfg.sweep.mode = SweepMode::TwoD;
    } else if (name == "3d") {
      cfg.sweep.mode = SweepMode::ThreeD;
    } else {
      bad_key("mode", "must be \"2d\" or \"3d\"");
    }
  }

  cfg.sweep.convention = ReferenceConvention::Midpoint;
  if (const ordered_json* conv = find_member(doc, "convention")) {
    const std::string name = conv->is_string() ? conv->get<std::string>() : "";
    if (name == "midpoint") {
      cfg.sweep.convention = ReferenceConvention::Midpoint;
    } else if (name == "basepoint") {
      cfg.sweep.convention = ReferenceConvention::BasePoint;
    } else {
      bad_key("convention", "must be \"midpoint\" or \"basepoint\"");
    }
  }

  OperatingRange& range = cfg.sweep.range;
  if (cfg.sweep.mode == SweepMode::TwoD) {
    range.z_min = range.z_max = 0.0;
  }
  if (const ordered_json* r = find_member(doc, "range")) {
    if (!r->is_object()) {
      bad_key("range", "must be an object");
    }
    reject_unknown_keys(*r, "range", {"x", "y", "z", "step_cm"});
    parse_axis_range(*r, "x", range.x_min, range.x_max);
    parse_axis_range(*r, "y", range.y_min, range.y_max);
    parse_axis_range(*r, "z", range.z_min, range.z_max);
    range.step = number_or(*r, "range", "step_cm", range.step);
  }

  const ordered_json* disp = find_member(doc, "displacement");
  const ordered_json* motion = find_member(doc, "motion");
  if ((disp != nullptr) == (motion != nullptr)) {
    throw ConfigError("config must provide exactly one of 'displacement' and 'motion'");
  }
  if (disp != nullptr) {
    if (!disp->is_object()) {
      bad_key("displacement", "must be an object");
    }
    reject_unknown_keys(*disp, "displacement", {"dx_cm", "dy_cm", "dz_cm"});
    cfg.sweep.displacement = {number_or(*disp, "displacement", "dx_cm", 0.0),
                              number_or(*disp, "displacement", "dy_cm", 0.0),
                              number_or(*disp, "displacement", "dz_cm", 0.0)};
  } else {
    if (!motion->is_object()) {
      bad_key("motion", "must be an object");
    }
    reject_unknown_keys(*motion, "motion", {"vx_cm_s", "vy_cm_s", "vz_cm_s", "dt_s"});
    MotionSpec spec;
    spec.velocity = {number_or(*motion, "motion", "vx_cm_s", 0.0),
                     number_or(*motion, "motion", "vy_cm_s", 0.0),
                     number_or(*motion, "motion", "vz_cm_s", 0.0)};
    spec.timing_skew = need_number(*motion, "motion", "dt_s");
    try {
      cfg.sweep.displacement = displacement_from_motion(spec);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("config key 'motion.dt_s' is invalid: ") + e.what());
    }
    cfg.motion = spec;
  }

  if (const ordered_json* slice = find_member(doc, "slice")) {
    if (!slice->is_object()) {
      bad_key("slice", "must be an object with axis and value");
    }
    reject_unknown_keys(*slice, "slice", {"axis", "value"});
    const ordered_json* axis = find_member(*slice, "axis");
    const std::string name =
        (axis != nullptr && axis->is_string()) ? axis->get<std::string>() : "";
    if (name != "x" && name != "y" && name != "z") {
      bad_key("slice.axis", "must be \"x\", \"y\" or \"z\"");
    }
    cfg.sweep.slice = AxisSlice{name[0], need_number(*slice, "slice", "value")};
  }

  if (const ordered_json* outputs = find_member(doc, "outputs")) {
    if (!outputs->is_array()) {
      bad_key("outputs", "must be an array");
    }
    for (std::size_t i = 0; i < outputs->size(); ++i) {
      cfg.outputs.push_back(parse_output((*outputs)[i], i));
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

void check_outputs_writable(const std::vector<OutputSpec>& outputs) {
  for (const OutputSpec& out : outputs) {
    const fs::path target(out.path);
    fs::path dir = target.parent_path();
    if (dir.empty()) {
      dir = ".";
    }
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      throw ConfigError("output directory does not exist: " + dir.string());
    }
    if (::access(dir.c_str(), W_OK) != 0) {
      throw ConfigError("output directory is not writable: " + dir.string());
    }
    if (fs::is_directory(target, ec)) {
      throw ConfigError("output path is a directory: " + out.path);
    }
  }
}

namespace {

constexpr char kCellsHeader[] = "x_cm,y_cm,z_cm,exact_err_cm,approx_err_cm,ex_cm,ey_cm,ez_cm";

} // namespace

std::string cells_to_csv(const std::vector<GridCell>& cells) {
  std::string out(kCellsHeader);
  out += '\n';
  for (const GridCell& c : cells) {
    out += format_g9(c.point.x);
    out += ',';
    out += format_g9(c.point.y);
    out += ',';
    out += format_g9(c.point.z);
    out += ',';
    out += format_g9(c.exact_error);
    out += ',';
    out += format_g9(c.approx_error);
    out += ',';
    out += format_g9(c.error_vector.x);
    out += ',';
    out += format_g9(c.error_vector.y);
    out += ',';
    out += format_g9(c.error_vector.z);
    out += '\n';
  }
  return out;
}

std::vector<GridCell> cells_from_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open cells CSV: " + path);
  }
  std::string line;
  if (!std::getline(in, line) || line != kCellsHeader) {
    throw ConfigError("cells CSV has an unexpected header: " + path);
  }
  std::vector<GridCell> cells;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    double fields[8];
    const char* cursor = line.data();
    const char* end = line.data() + line.size();
    for (int i = 0; i < 8; ++i) {
      if (i > 0) {
        if (cursor >= end || *cursor != ',') {
          throw ConfigError("cells CSV line " + std::to_string(line_no) + " is malformed");
        }
        ++cursor;
      }
      const auto res = std::from_chars(cursor, end, fields[i]);
      if (res.ec != std::errc()) {
        throw ConfigError("cells CSV line " + std::to_string(line_no) + " is malformed");
      }
      cursor = res.ptr;
    }
    if (cursor != end) {
      throw ConfigError("cells CSV line " + std::to_string(line_no) + " has trailing content");
    }
    cells.push_back({{fields[0], fields[1], fields[2]},
                     fields[3],
                     fields[4],
                     {fields[5], fields[6], fields[7]}});
  }
  return cells;
}

namespace {

ordered_json config_echo(const RunConfig& config) {
  const SweepConfig& s = config.sweep;
  ordered_json c;
  c["rig"]["d_cm"] = g9_value(s.rig.d);
  c["mode"] = s.mode == SweepMode::TwoD ? "2d" : "3d";
  c["convention"] = convention_name(s.convention);
  ordered_json range;
  range["x"] = {{"min", g9_value(s.range.x_min)}, {"max", g9_value(s.range.x_max)}};
  range["y"] = {{"min", g9_value(s.range.y_min)}, {"max", g9_value(s.range.y_max)}};
  range["z"] = {{"min", g9_value(s.range.z_min)}, {"max", g9_value(s.range.z_max)}};
  range["step_cm"] = g9_value(s.range.step);
  c["range"] = std::move(range);
  c["displacement"] = {{"dx_cm", g9_value(s.displacement.dx)},
                       {"dy_cm", g9_value(s.displacement.dy)},
                       {"dz_cm", g9_value(s.displacement.dz)}};
  if (config.motion) {
    c["motion"] = {{"vx_cm_s", g9_value(config.motion->velocity.x)},
                   {"vy_cm_s", g9_value(config.motion->velocity.y)},
                   {"vz_cm_s", g9_value(config.motion->velocity.z)},
                   {"dt_s", g9_value(config.motion->timing_skew)}};
  }
  if (s.slice) {
    c["slice"] = {{"axis", std::string(1, s.slice->axis)}, {"value", g9_value(s.slice->value)}};
  }
  if (!config.outputs.empty()) {
    ordered_json outs = ordered_json::array();
    for (const OutputSpec& out : config.outputs) {
      ordered_json o;
      switch (out.kind) {
        case OutputKind::Cells: o["kind"] = "cells"; break;
        case OutputKind::Summary: o["kind"] = "summary"; break;
        case OutputKind::Heatmap: o["kind"] = "heatmap"; break;
      }
      o["path"] = out.path;
      if (out.kind == OutputKind::Heatmap) {
        o["width"] = out.heatmap.width;
        o["height"] = out.heatmap.height;
        if (out.heatmap.scale_min) {
          o["scale_min"] = g9_value(*out.heatmap.scale_min);
        }
        if (out.heatmap.scale_max) {
          o["scale_max"] = g9_value(*out.heatmap.scale_max);
        }
      }
      outs.push_back(std::move(o));
    }
    c["outputs"] = std::move(outs);
  }
  return c;
}

std::string summary_json_with_config(ordered_json config_block, const SweepSummary& summary) {
  ordered_json j;
  j["config"] = std::move(config_block);
  j["cell_count"] = summary.cell_count;
  j["max_error_cm"] = g9_value(summary.max_error);
  ordered_json argmax = ordered_json::array();
  for (const Point3& p : summary.argmax_points) {
    argmax.push_back(point_json(p));
  }
  j["argmax_points_cm"] = std::move(argmax);
  j["min_error_cm"] = g9_value(summary.min_error);
  j["mean_error_cm"] = g9_value(summary.mean_error);
  j["max_approx_vs_exact_gap"] = g9_value(summary.max_approx_vs_exact_gap);
  return j.dump(2) + "\n";
}

} // namespace

std::string summary_to_json(const RunConfig& config, const SweepSummary& summary) {
  return summary_json_with_config(config_echo(config), summary);
}

std::string summary_to_json(const std::string& source_csv_path, const SweepSummary& summary) {
  ordered_json c;
  c["source_cells_csv"] = source_csv_path;
  return summary_json_with_config(std::move(c), summary);
}

std::string error_report_to_json(const CameraRig& rig, const ErrorReport& report,
                                 const std::optional<MotionSpec>& motion) {
  ordered_json j;
  j["rig"]["d_cm"] = g9_value(rig.d);
  if (motion) {
    j["motion"] = {{"vx_cm_s", g9_value(motion->velocity.x)},
                   {"vy_cm_s", g9_value(motion->velocity.y)},
                   {"vz_cm_s", g9_value(motion->velocity.z)},
                   {"dt_s", g9_value(motion->timing_skew)}};
  }
  j["displacement_cm"] =
      ordered_json::array({g9_value(report.displaced_point.x - report.true_point.x),
                           g9_value(report.displaced_point.y - report.true_point.y),
                           g9_value(report.displaced_point.z - report.true_point.z)});
  j["convention"] = convention_name(report.convention);
  j["planar"] = report.planar;
  j["true_point_cm"] = point_json(report.true_point);
  j["displaced_point_cm"] = point_json(report.displaced_point);
  j["reconstructed_point_cm"] = point_json(report.reconstructed_point);
  j["reference_point_cm"] = point_json(report.reference_point);
  j["error_vector_cm"] = vec_json(report.error_vector);
  j["error_magnitude_cm"] = g9_value(report.error_magnitude);
  j["approx_error_vector_cm"] = vec_json(report.approx_error_vector);
  j["approx_error_magnitude_cm"] = g9_value(report.approx_error_magnitude);
  return j.dump(2) + "\n";
}

std::string gap_table_to_csv(const ApproxComparison& comparison) {
  std::string out("x_cm,y_cm,z_cm,exact_err_cm,approx_err_cm,rel_gap\n");
  for (const GapRow& row : comparison.rows) {
    out += format_g9(row.point.x);
    out += ',';
    out += format_g9(row.point.y);
    out += ',';
    out += format_g9(row.point.z);
    out += ',';
    out += format_g9(row.exact_error);
    out += ',';
    out += format_g9(row.approx_error);
    out += ',';
    out += format_g9(row.relative_gap);
    out += '\n';
  }
  return out;
}

namespace {

// 16-step ramp, dark-violet to yellow (viridis-like).
constexpr const char* kRamp[16] = {
    "#440154", "#481a6c", "#472f7d", "#414487", "#39568c", "#31688e",
    "#2a788e", "#23888e", "#1f988b", "#22a884", "#35b779", "#54c568",
    "#7ad151", "#a5db36", "#d2e21b", "#fde725"};

struct PlaneAxis {
  char name = 'x';
  std::vector<double> values; // ascending
  std::size_t index_of(double v) const {
    const auto it = std::lower_bound(values.begin(), values.end(), v);
    return static_cast<std::size_t>(it - values.begin());
  }
};

void svg_text(std::string& out, double x, double y, const std::string& anchor,
              const std::string& text) {
  out += "<text x=\"" + format_g9(x) + "\" y=\"" + format_g9(y) +
         "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" + anchor + "\">" +
         text + "</text>\n";
}

} // namespace

std::string heatmap_to_svg(const std::vector<GridCell>& cells, const HeatmapSpec& spec) {
  if (cells.empty()) {
    throw ConfigError("heatmap requires at least one cell");
  }

  std::set<double> xs, ys, zs;
  for (const GridCell& c : cells) {
    xs.insert(c.point.x);
    ys.insert(c.point.y);
    zs.insert(c.point.z);
  }

  // The plot plane is spanned by the two varying axes; exactly which axis
  // is fixed tells us the orientation (x-y for planar sweeps, x-z for a y
  // slice, y-z for an x slice).
  PlaneAxis horiz, vert;
  char fixed_name = 0;
  double fixed_value = 0.0;
  if (zs.size() == 1) {
    horiz = {'x', {xs.begin(), xs.end()}};
    vert = {'y', {ys.begin(), ys.end()}};
    fixed_name = 'z';
    fixed_value = *zs.begin();
  } else if (ys.size() == 1) {
    horiz = {'x', {xs.begin(), xs.end()}};
    vert = {'z', {zs.begin(), zs.end()}};
    fixed_name = 'y';
    fixed_value = *ys.begin();
  } else if (xs.size() == 1) {
    horiz = {'y', {ys.begin(), ys.end()}};
    vert = {'z', {zs.begin(), zs.end()}};
    fixed_name = 'x';
    fixed_value = *xs.begin();
  } else {
    throw ConfigError("heatmap requires planar cells: one axis must be constant "
                      "(run a 2d sweep or slice the volume)");
  }
  if (cells.size() != horiz.values.size() * vert.values.size()) {
    throw ConfigError("heatmap requires a full rectangular cell grid");
  }

  double data_min = cells.front().exact_error;
  double data_max = data_min;
  for (const GridCell& c : cells) {
    data_min = std::min(data_min, c.exact_error);
    data_max = std::max(data_max, c.exact_error);
  }
  const double lo = spec.scale_min.value_or(data_min);
  const double hi = spec.scale_max.value_or(data_max);
  const double span = hi > lo ? hi - lo : 1.0;

  const double margin_left = 70.0;
  const double margin_right = 110.0;
  const double margin_top = 40.0;
  const double margin_bottom = 50.0;
  const double plot_w = std::max(1.0, spec.width - margin_left - margin_right);
  const double plot_h = std::max(1.0, spec.height - margin_top - margin_bottom);
  const double cell_w = plot_w / static_cast<double>(horiz.values.size());
  const double cell_h = plot_h / static_cast<double>(vert.values.size());

  std::string out;
  out.reserve(cells.size() * 96 + 4096);
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) +
         "\" height=\"" + std::to_string(spec.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  std::string title = "exact localization error (cm)";
  title += ", ";
  title += fixed_name;
  title += "_cm = " + format_g9(fixed_value);
  svg_text(out, margin_left, margin_top - 16.0, "start", title);

  for (const GridCell& c : cells) {
    const double h_value = horiz.name == 'x' ? c.point.x : c.point.y;
    const double v_value = vert.name == 'y' ? c.point.y : c.point.z;
    const std::size_t ih = horiz.index_of(h_value);
    const std::size_t iv = vert.index_of(v_value);
    int bin = static_cast<int>((c.exact_error - lo) / span * 16.0);
    bin = std::clamp(bin, 0, 15);
    const double px = margin_left + static_cast<double>(ih) * cell_w;
    // SVG y grows downward; flip so larger axis values sit higher.
    const double py =
        margin_top + static_cast<double>(vert.values.size() - 1 - iv) * cell_h;
    out += "<rect x=\"" + format_g9(px) + "\" y=\"" + format_g9(py) + "\" width=\"" +
           format_g9(cell_w + 0.5) + "\" height=\"" + format_g9(cell_h + 0.5) +
           "\" fill=\"" + kRamp[bin] + "\"/>\n";
  }

  // Axis names and corner ticks.
  const std::string h_name = std::string(1, horiz.name) + "_cm";
  const std::string v_name = std::string(1, vert.name) + "_cm";
  svg_text(out, margin_left + plot_w / 2.0, margin_top + plot_h + 32.0, "middle", h_name);
  svg_text(out, margin_left - 8.0, margin_top - 6.0, "end", v_name);
  svg_text(out, margin_left, margin_top + plot_h + 16.0, "middle", format_g9(horiz.values.front()));
  svg_text(out, margin_left + plot_w, margin_top + plot_h + 16.0, "middle",
           format_g9(horiz.values.back()));
  svg_text(out, margin_left - 8.0, margin_top + plot_h, "end", format_g9(vert.values.front()));
  svg_text(out, margin_left - 8.0, margin_top + 10.0, "end", format_g9(vert.values.back()));

  // Legend: the 16 ramp bins, low at the bottom.
  const double legend_x = margin_left + plot_w + 24.0;
  const double legend_h = plot_h / 16.0;
  for (int i = 0; i < 16; ++i) {
    const double py = margin_top + (15 - i) * legend_h;
    out += "<rect x=\"" + format_g9(legend_x) + "\" y=\"" + format_g9(py) + "\" width=\"18\" height=\"" +
           format_g9(legend_h + 0.5) + "\" fill=\"" + kRamp[i] + "\"/>\n";
  }
  svg_text(out, legend_x + 24.0, margin_top + plot_h, "start", format_g9(lo));
  svg_text(out, legend_x + 24.0, margin_top + plot_h / 2.0, "start", format_g9((lo + hi) / 2.0));
  svg_text(out, legend_x + 24.0, margin_top + 10.0, "start", format_g9(hi));

  out += "</svg>\n";
  return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) {
    dir = ".";
  }
  const fs::path tmp =
      dir / (target.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ConfigError("cannot create output file: " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ConfigError("failed while writing: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignore;
    fs::remove(tmp, ignore);
    throw ConfigError("failed to move output into place: " + path + " (" + ec.message() + ")");
  }
}

} // namespace navskew
