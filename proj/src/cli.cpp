#include "eyenav/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eyenav/analytics.hpp"
#include "eyenav/error.hpp"
#include "eyenav/geometry.hpp"
#include "eyenav/io_formats.hpp"
#include "eyenav/replay.hpp"
#include "eyenav/synth.hpp"
#include "eyenav/trace_model.hpp"

namespace eyenav::cli {

namespace {

namespace fs = std::filesystem;

/// Bad command-line usage detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CliConfig {
  std::string command;
  std::string direction;  // convert: csv2json | json2csv
  std::vector<std::string> inputs;
  std::string output;  // empty or "-" = stdout
  std::optional<std::string> scene;
  std::string user;

  bool flip = false;
  std::string scale_direction = "virtual-per-meter";
  std::string forward = "minus-z";
  double near = 0.01;
  double far = 1000.0;
  int width = kDefaultImageWidth;
  int height = kDefaultImageHeight;
  bool strict = false;
  double gaze_drift_limit = 0.5;
  std::string sites_path;

  bool aggregate = false;
  std::string format = "text";
  double min_displacement = 0.0;
  unsigned threads = 0;
  double half_extent = 1.5;

  // synth
  std::string path_kind = "circle";
  double radius = 1.0;
  double revolutions = 1.0;
  std::vector<double> from{0.0, 0.0};
  std::vector<double> to{1.0, 0.0};
  double duration = 60.0;
  double fps = 60.0;
  double head_height = 1.6;
  double height_amplitude = 0.0;
  double height_period = 2.0;
  double ipd_m = 0.063;
  double gaze_offset = 0.0;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  bool stage_only = false;
};

ScaleDirection scale_direction(const CliConfig& c) {
  return c.scale_direction == "meters-per-virtual" ? ScaleDirection::MetersPerVirtual
                                                   : ScaleDirection::VirtualPerMeter;
}

ForwardAxis forward_axis(const CliConfig& c) {
  return c.forward == "plus-z" ? ForwardAxis::PlusZ : ForwardAxis::MinusZ;
}

ValidationOptions validation_options(const CliConfig& c) {
  ValidationOptions o;
  o.strict = c.strict;
  o.gaze_drift_limit = c.gaze_drift_limit;
  return o;
}

void check_flags(const CliConfig& c) {
  if (!(c.near > 0.0) || !(c.far > c.near)) throw UsageError("require 0 < --near < --far");
  if (c.width <= 0 || c.height <= 0) throw UsageError("image size must be positive");
  if (c.scene && !c.scene->empty() && c.command != "synth" && c.command != "validate" &&
      !scene_registry().contains(*c.scene)) {
    throw UsageError("unknown scene '" + *c.scene + "'");
  }
  if (c.command == "synth") {
    if (c.from.size() != 2 || c.to.size() != 2) throw UsageError("--from/--to take two numbers: x z");
    if (!c.stage_only && c.scene && !scene_registry().contains(*c.scene)) {
      throw UsageError("unknown scene '" + *c.scene + "' (use --stage for a stage-space trace)");
    }
  }
}

const std::string& single_input(const CliConfig& c) {
  if (c.inputs.size() != 1) throw UsageError(c.command + " takes exactly one input file");
  return c.inputs.front();
}

/// Scene for a trace file: --scene wins, otherwise the file name pattern.
const SceneInit& resolve_scene(const CliConfig& c, const std::string& input) {
  std::string scene;
  if (c.scene) {
    scene = *c.scene;
  } else if (auto parts = parse_trace_filename(fs::path(input).filename().string())) {
    scene = parts->second;
  } else {
    throw UsageError("cannot infer the scene from '" + input + "'; pass --scene");
  }
  if (!scene_registry().contains(scene)) throw UsageError("unknown scene '" + scene + "'");
  return scene_registry().lookup(scene);
}

Trace load_trace(const CliConfig& c, const std::string& input) {
  return read_trace_file(input, validation_options(c), c.scene);
}

void emit(const CliConfig& c, const std::string& content, std::ostream& out) {
  if (c.output.empty() || c.output == "-") {
    out << content;
  } else {
    write_text_file(c.output, content);
  }
}

std::string provenance_line(const std::string& command,
                            const std::vector<std::pair<std::string, std::string>>& flags) {
  std::string line = "# eyenav " + command;
  for (const auto& [k, v] : flags) line += " " + k + "=" + v;
  return line + "\n";
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_validate(const CliConfig& c, std::ostream& out) {
  const std::string& input = single_input(c);
  std::istringstream text(read_text_file(input));
  const RawTrace raw = read_trace_rows(text);
  ValidationReport report = validate_rows(raw.rows, validation_options(c));

  std::optional<std::string> scene = c.scene;
  if (!scene) {
    if (auto parts = parse_trace_filename(fs::path(input).filename().string())) scene = parts->second;
  }
  if (scene) check_scene(*scene, scene_registry(), report);

  for (const Diagnostic& d : report.items) {
    out << input << ':' << d.row << ": " << (d.severity == Severity::Error ? "error" : "warning")
        << ": " << d.message << " [" << d.code << "]\n";
  }
  out << input << ": " << raw.rows.size() << " rows, " << report.error_count() << " errors, "
      << report.warning_count() << " warnings\n";
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_convert(const CliConfig& c, std::ostream& out) {
  const std::string& input = single_input(c);
  if (c.direction == "csv2json") {
    const Trace trace = load_trace(c, input);
    CameraPathDocument doc = csv_to_json(trace, c.flip);
    doc.provenance["command"] = "convert csv2json";
    doc.provenance["flip"] = c.flip ? "true" : "false";
    emit(c, write_camera_path(doc), out);
  } else {
    const CameraPathDocument doc = read_camera_path(read_text_file(input));
    const Trace trace = json_to_csv(doc);
    emit(c, provenance_line("convert json2csv", {{"convention", std::string(to_string(doc.convention))}}) +
                write_trace_csv(trace),
         out);
  }
  return kExitOk;
}

int cmd_space(const CliConfig& c, std::ostream& out, bool to_stage) {
  const std::string& input = single_input(c);
  const SceneInit& init = resolve_scene(c, input);
  const Trace trace = load_trace(c, input);
  const Trace result = to_stage ? trace_to_stage(trace, init, scale_direction(c))
                                : trace_to_virtual(trace, init, scale_direction(c));
  emit(c,
       provenance_line(c.command, {{"scene", init.scene_id}, {"scale_direction", c.scale_direction}}) +
           write_trace_csv(result),
       out);
  return kExitOk;
}

int cmd_stats(const CliConfig& c, std::ostream& out, std::ostream& err) {
  StatsOptions stats;
  stats.scale_direction = scale_direction(c);
  stats.min_displacement_m = c.min_displacement;
  const std::string header =
      provenance_line(c.aggregate ? "stats --aggregate" : "stats",
                      {{"scale_direction", c.scale_direction},
                       {"min_displacement", format_significant(c.min_displacement)}});

  if (c.aggregate) {
    std::string root;
    if (c.inputs.size() == 1) {
      root = c.inputs.front();
    } else if (c.inputs.empty()) {
      const char* env = std::getenv(kDatasetRootEnv);
      if (env == nullptr || *env == '\0') {
        throw UsageError(std::string("stats --aggregate needs a dataset root or ") + kDatasetRootEnv);
      }
      root = env;
    } else {
      throw UsageError("stats --aggregate takes one dataset root");
    }
    AggregateOptions options;
    options.stats = stats;
    options.validation = validation_options(c);
    options.threads = c.threads;
    if (!c.sites_path.empty()) options.sites = parse_site_map(read_text_file(c.sites_path));
    const DatasetIndex index = scan_dataset(root);
    for (const std::string& w : index.warnings) err << "warning: " << w << '\n';
    const AggregateResult result = aggregate_stats(index, scene_registry(), options);
    for (const std::string& w : result.warnings) err << "warning: " << w << '\n';
    emit(c,
         header + (c.format == "csv" ? render_aggregate_csv(result.table)
                                     : render_aggregate_text(result.table)),
         out);
    return kExitOk;
  }

  if (c.inputs.empty()) throw UsageError("stats needs at least one trace file");
  std::vector<TraceSummary> rows;
  for (const std::string& input : c.inputs) {
    const SceneInit& init = resolve_scene(c, input);
    const Trace trace = load_trace(c, input);
    rows.push_back({trace.user_id(), init.scene_id, "-", trace_stats(trace, init, stats)});
  }
  emit(c, header + (c.format == "csv" ? render_stats_csv(rows) : render_stats_text(rows)), out);
  return kExitOk;
}

int cmd_cameras(const CliConfig& c, std::ostream& out) {
  const Trace trace = load_trace(c, single_input(c));
  CameraOptions options;
  options.near = c.near;
  options.far = c.far;
  options.image = {c.width, c.height};
  CameraPathDocument doc = camera_stream_document(trace, options);
  doc.provenance = {{"command", "cameras"},
                    {"near", format_significant(c.near)},
                    {"far", format_significant(c.far)},
                    {"width", std::to_string(c.width)},
                    {"height", std::to_string(c.height)}};
  emit(c, write_camera_path(doc), out);
  return kExitOk;
}

int cmd_gaze_pixels(const CliConfig& c, std::ostream& out) {
  const Trace trace = load_trace(c, single_input(c));
  if (!trace.has_gaze()) throw InvalidArgument("trace has no gaze data");
  const ImageSize image{c.width, c.height};
  std::ostringstream s;
  s << provenance_line("gaze-pixels", {{"width", std::to_string(c.width)},
                                       {"height", std::to_string(c.height)},
                                       {"forward", c.forward}});
  s << "frame,eye,timestamp_ms,u,v,in_view\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (const EyeView* ev : {&trace[i].left, &trace[i].right}) {
      const GazePixel px = gaze_pixel(*ev, image, forward_axis(c));
      s << i << ',' << static_cast<int>(ev->eye) << ',' << format_significant(ev->timestamp_ms) << ','
        << format_significant(px.u) << ',' << format_significant(px.v) << ',' << (px.in_view ? 1 : 0)
        << '\n';
    }
  }
  emit(c, s.str(), out);
  return kExitOk;
}

int cmd_synth(const CliConfig& c, std::ostream& out) {
  synth::MotionSpec spec;
  spec.duration_s = c.duration;
  spec.fps = c.fps;
  if (c.path_kind == "circle") {
    spec.path = synth::Circle{c.radius, c.revolutions, c.from[0], c.from[1]};
  } else if (c.path_kind == "line") {
    spec.path = synth::Line{c.from[0], c.from[1], c.to[0], c.to[1]};
  } else {
    spec.path = synth::Stationary{c.from[0], c.from[1]};
  }
  if (c.height_amplitude != 0.0) {
    spec.height = synth::SinusoidHeight{c.head_height, c.height_amplitude, c.height_period};
  } else {
    spec.height = synth::ConstantHeight{c.head_height};
  }
  spec.ipd_m = c.ipd_m;
  spec.gaze_offset_deg = c.gaze_offset;
  spec.jitter_m = c.jitter;
  spec.seed = c.seed;
  spec.user_id = c.user;
  spec.scene_id = c.scene.value_or("");

  std::optional<SceneInit> init;
  if (c.scene && !c.stage_only) init = scene_registry().lookup(*c.scene);
  const Trace trace = synth::generate_trace(spec, init, scale_direction(c));
  emit(c,
       provenance_line("synth", {{"path", c.path_kind},
                                 {"radius", format_significant(c.radius)},
                                 {"revolutions", format_significant(c.revolutions)},
                                 {"from", format_significant(c.from[0]) + "," + format_significant(c.from[1])},
                                 {"to", format_significant(c.to[0]) + "," + format_significant(c.to[1])},
                                 {"height", format_significant(c.head_height)},
                                 {"height_amplitude", format_significant(c.height_amplitude)},
                                 {"height_period", format_significant(c.height_period)},
                                 {"duration", format_significant(c.duration)},
                                 {"fps", format_significant(c.fps)},
                                 {"ipd", format_significant(c.ipd_m)},
                                 {"gaze_offset", format_significant(c.gaze_offset)},
                                 {"jitter", format_significant(c.jitter)},
                                 {"seed", std::to_string(c.seed)}}) +
           write_trace_csv(trace),
       out);
  return kExitOk;
}

int cmd_plot_data(const CliConfig& c, std::ostream& err) {
  const std::string& input = single_input(c);
  if (c.output.empty() || c.output == "-") throw UsageError("plot-data needs -o <prefix>");
  const SceneInit& init = resolve_scene(c, input);
  const Trace trace = load_trace(c, input);
  TrajectoryOptions options;
  options.scale_direction = scale_direction(c);
  options.half_extent_m = c.half_extent;
  const TrajectorySeries series = trajectory_export(trace, init, options);

  const std::string header = provenance_line(
      "plot-data", {{"scene", init.scene_id}, {"half_extent", format_significant(c.half_extent)}});
  std::ostringstream xz, y;
  xz << header << "x_m,z_m\n";
  for (const XzPoint& p : series.xz) xz << format_significant(p.x) << ',' << format_significant(p.z) << '\n';
  y << header << "t_s,y_m\n";
  for (const HeightPoint& p : series.height) {
    y << format_significant(p.t_ms / 1000.0) << ',' << format_significant(p.y) << '\n';
  }
  write_text_file(c.output + "_xz.csv", xz.str());
  write_text_file(c.output + "_y.csv", y.str());
  if (!series.warnings.empty()) {
    err << "warning: " << series.warnings.size() << " frames outside the stage area (first: "
        << series.warnings.front().message << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Tools for 6-DoF head-pose and eye-gaze navigation traces", "eyenav"};
  app.require_subcommand(1);

  const std::vector<std::string> scale_choices{"virtual-per-meter", "meters-per-virtual"};
  auto add_common = [&](CLI::App* sub, bool multi_input = false) {
    if (multi_input) {
      sub->add_option("inputs", c.inputs, "Input files");
    } else {
      sub->add_option("input", c.inputs, "Input file")->required()->expected(1);
    }
    sub->add_option("-o,--output", c.output, "Output path (default stdout)");
    sub->add_option("--scene", c.scene, "Scene id (default: from the file name)");
    sub->add_flag("--strict", c.strict, "Refuse traces with any validation error");
    sub->add_option("--gaze-drift-limit", c.gaze_drift_limit, "Gaze/eye position warning distance")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--scale-direction", c.scale_direction, "How the scene scale is applied")
        ->check(CLI::IsMember(scale_choices));
  };

  auto* validate = app.add_subcommand("validate", "Check a trace CSV and report problems");
  add_common(validate);

  auto* convert = app.add_subcommand("convert", "Convert between trace CSV and camera-path JSON");
  convert->add_option("direction", c.direction, "csv2json or json2csv")
      ->required()
      ->check(CLI::IsMember({"csv2json", "json2csv"}));
  add_common(convert);
  convert->add_flag("--flip", c.flip, "Write matrices in the flipped +Y-up convention (csv2json)");

  auto* to_stage = app.add_subcommand("to-stage", "Virtual-world trace to physical-stage meters");
  add_common(to_stage);
  auto* to_virtual = app.add_subcommand("to-virtual", "Physical-stage trace to virtual-world units");
  add_common(to_virtual);

  auto* stats = app.add_subcommand("stats", "Per-trace statistics, or dataset aggregates");
  add_common(stats, true);
  stats->add_flag("--aggregate", c.aggregate, "Treat the input as a dataset root and aggregate");
  stats->add_option("--sites", c.sites_path, "CSV mapping user to site (user,site)");
  stats->add_option("--format", c.format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
  stats->add_option("--min-displacement", c.min_displacement, "Jitter threshold in meters")
      ->check(CLI::NonNegativeNumber);
  stats->add_option("--threads", c.threads, "Worker threads for --aggregate (0 = auto)");

  auto* cameras = app.add_subcommand("cameras", "Export per-eye view and projection matrices");
  add_common(cameras);
  cameras->add_option("--near", c.near, "Near clip plane");
  cameras->add_option("--far", c.far, "Far clip plane");
  cameras->add_option("--width", c.width, "Image width in pixels");
  cameras->add_option("--height", c.height, "Image height in pixels");

  auto* gaze = app.add_subcommand("gaze-pixels", "Per-frame gaze position on each eye image");
  add_common(gaze);
  gaze->add_option("--width", c.width, "Image width in pixels");
  gaze->add_option("--height", c.height, "Image height in pixels");
  gaze->add_option("--forward", c.forward, "Viewing axis: minus-z or plus-z")
      ->check(CLI::IsMember({"minus-z", "plus-z"}));

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic trace");
  synth_cmd->add_option("-o,--output", c.output, "Output path (default stdout)");
  synth_cmd->add_option("--scene", c.scene, "Scene id; its initialization is applied unless --stage");
  synth_cmd->add_flag("--stage", c.stage_only, "Emit physical-stage coordinates");
  synth_cmd->add_option("--user", c.user, "User id")->default_val("user0");
  synth_cmd->add_option("--path", c.path_kind, "circle, line or stationary")
      ->check(CLI::IsMember({"circle", "line", "stationary"}));
  synth_cmd->add_option("--radius", c.radius, "Circle radius (m)")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--revolutions", c.revolutions, "Circle revolutions");
  synth_cmd->add_option("--from", c.from, "Start x z (circle center / stationary position)")->expected(2);
  synth_cmd->add_option("--to", c.to, "End x z of a line")->expected(2);
  synth_cmd->add_option("--duration", c.duration, "Seconds")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--fps", c.fps, "Frames per second")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--height", c.head_height, "Head height (m)");
  synth_cmd->add_option("--height-amplitude", c.height_amplitude, "Head bob amplitude (m)");
  synth_cmd->add_option("--height-period", c.height_period, "Head bob period (s)")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--ipd", c.ipd_m, "Inter-pupillary distance (m)")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--gaze-offset", c.gaze_offset, "Gaze yaw relative to the head (deg)");
  synth_cmd->add_option("--jitter", c.jitter, "Head position noise amplitude (m)")
      ->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--seed", c.seed, "Noise seed");
  synth_cmd->add_option("--scale-direction", c.scale_direction, "How the scene scale is applied")
      ->check(CLI::IsMember(scale_choices));

  auto* plot = app.add_subcommand("plot-data", "Stage-space XZ path and height-over-time series");
  add_common(plot);
  plot->add_option("--half-extent", c.half_extent, "Half side of the stage square (m)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "eyenav: " << e.what() << '\n';
    return kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    check_flags(c);
    if (c.command == "validate") return cmd_validate(c, out);
    if (c.command == "convert") return cmd_convert(c, out);
    if (c.command == "to-stage") return cmd_space(c, out, true);
    if (c.command == "to-virtual") return cmd_space(c, out, false);
    if (c.command == "stats") return cmd_stats(c, out, err);
    if (c.command == "cameras") return cmd_cameras(c, out);
    if (c.command == "gaze-pixels") return cmd_gaze_pixels(c, out);
    if (c.command == "synth") return cmd_synth(c, out);
    if (c.command == "plot-data") return cmd_plot_data(c, err);
    throw UsageError("unknown command " + c.command);
  } catch (const UsageError& e) {
    err << "eyenav: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "eyenav: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    const std::string where = c.inputs.empty() ? std::string() : c.inputs.front() + ": ";
    err << "eyenav: " << where << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace eyenav::cli
