// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eyenav/analytics.hpp"
#include "eyenav/cli.hpp"
#include "eyenav/error.hpp"
#include "eyenav/geometry.hpp"
#include "eyenav/io_formats.hpp"
#include "eyenav/replay.hpp"
#include "eyenav/synth.hpp"
#include "test_support.hpp"

using namespace eyenav;
namespace t = eyenav::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome result(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    return {false, std::to_string(failures_) + " failure(s): " + notes_};
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

std::string num(double v) { return format_significant(v, 6); }

const char* const kPrinted[4][19] = {
    {"0", "-0.942478", "0.698132", "-0.942478", "0.733038", "-3.66908", "-3.65709", "4.65788",
     "0.494687", "0.294258", "0.123821", "0.808310", "0.250753", "0.0845578", "0.0237413", "0.964059",
     "-3.66845", "-3.65671", "4.65700"},
    {"1", "-0.698132", "0.942478", "-0.942478", "0.733038", "-3.51258", "-3.56052", "4.58845",
     "0.494687", "0.294258", "0.123821", "0.808310", "0.245048", "0.1037840", "0.0453922", "0.962871",
     "-3.51320", "-3.56090", "4.58873"},
    {"0", "-0.942478", "0.698132", "-0.942478", "0.733038", "-3.66901", "-3.65635", "4.65733",
     "0.494082", "0.293893", "0.122980", "0.808941", "0.248543", "0.0871354", "0.0263629", "0.964333",
     "-3.66845", "-3.65617", "4.65724"},
    {"1", "-0.698132", "0.942478", "-0.942478", "0.733038", "-3.51234", "-3.56015", "4.58775",
     "0.494082", "0.293893", "0.122980", "0.808941", "0.242903", "0.1064400", "0.0481759", "0.962989",
     "-3.51307", "-3.56065", "4.58826"},
};
const CsvColumn kPrintedOrder[19] = {
    CsvColumn::ViewIndex, CsvColumn::Fov1,   CsvColumn::Fov2,     CsvColumn::Fov3,     CsvColumn::Fov4,
    CsvColumn::PosX,      CsvColumn::PosY,   CsvColumn::PosZ,     CsvColumn::QuatX,    CsvColumn::QuatY,
    CsvColumn::QuatZ,     CsvColumn::QuatW,  CsvColumn::GazeQX,   CsvColumn::GazeQY,   CsvColumn::GazeQZ,
    CsvColumn::GazeQW,    CsvColumn::GazePosX, CsvColumn::GazePosY, CsvColumn::GazePosZ,
};

double row_value(const EyeView& ev, CsvColumn c) {
  switch (c) {
    case CsvColumn::ViewIndex: return ev.eye == Eye::Left ? 0 : 1;
    case CsvColumn::Fov1: return ev.fov.left;
    case CsvColumn::Fov2: return ev.fov.right;
    case CsvColumn::Fov3: return ev.fov.top;
    case CsvColumn::Fov4: return ev.fov.bottom;
    case CsvColumn::PosX: return ev.eye_pose.position.x;
    case CsvColumn::PosY: return ev.eye_pose.position.y;
    case CsvColumn::PosZ: return ev.eye_pose.position.z;
    case CsvColumn::QuatX: return ev.raw_head_quat().x;
    case CsvColumn::QuatY: return ev.raw_head_quat().y;
    case CsvColumn::QuatZ: return ev.raw_head_quat().z;
    case CsvColumn::QuatW: return ev.raw_head_quat().w;
    case CsvColumn::GazePosX: return ev.gaze_pose->position.x;
    case CsvColumn::GazePosY: return ev.gaze_pose->position.y;
    case CsvColumn::GazePosZ: return ev.gaze_pose->position.z;
    case CsvColumn::GazeQX: return ev.raw_gaze_quat()->x;
    case CsvColumn::GazeQY: return ev.raw_gaze_quat()->y;
    case CsvColumn::GazeQZ: return ev.raw_gaze_quat()->z;
    case CsvColumn::GazeQW: return ev.raw_gaze_quat()->w;
    case CsvColumn::Timestamp: return ev.timestamp_ms;
  }
  return NAN;
}

// 1. Golden parse of the four sample rows, then write-then-parse.
Outcome golden_parse() {
  Check c;
  const Trace trace = read_trace_file(t::sample_path());
  const auto rows = trace.rows();
  c.expect(rows.size() == 4, "expected 4 rows");
  for (std::size_t r = 0; r < rows.size() && r < 4; ++r) {
    for (std::size_t k = 0; k < 19; ++k) {
      const CsvColumn col = kPrintedOrder[k];
      const std::string& text = rows[r].recorded->text[static_cast<std::size_t>(col)];
      c.expect(text == kPrinted[r][k], "row " + std::to_string(r) + " " + std::string(column_name(col)) +
                                           " text '" + text + "'");
      c.expect(row_value(rows[r], col) == std::stod(kPrinted[r][k]),
               "row " + std::to_string(r) + " " + std::string(column_name(col)) + " value");
    }
  }
  const std::string written = write_trace_csv(trace);
  const Trace again = parse_trace_csv(written, trace.user_id(), trace.scene_id());
  const auto rows2 = again.rows();
  for (std::size_t r = 0; r < rows2.size(); ++r) {
    for (CsvColumn col : kPrintedOrder) {
      c.expect(row_value(rows[r], col) == row_value(rows2[r], col),
               "re-parse row " + std::to_string(r) + " " + std::string(column_name(col)));
    }
  }
  c.expect(write_trace_csv(again) == written, "second write differs");
  return c.result("4 rows x 19 fields string- and value-exact; write-then-parse identical");
}

// 2. undo(apply(p)) == p for every published scene.
Outcome scene_inverse() {
  Check c;
  t::Gen g(2024);
  double worst_pos = 0, worst_rot = 0;
  for (const SceneInit& init : scene_registry().entries()) {
    for (int i = 0; i < 1000; ++i) {
      const Pose p{{g.uniform(-1.5, 1.5), g.uniform(0, 2.2), g.uniform(-1.5, 1.5)}, g.rotation(),
                   CoordinateSpace::PhysicalStage};
      const Pose back = undo_scene_init(apply_scene_init(p, init), init);
      const UnitQuat a = p.orientation.canonical(), b = back.orientation.canonical();
      worst_pos = std::max(worst_pos, distance(p.position, back.position));
      worst_rot = std::max({worst_rot, std::abs(a.x() - b.x()), std::abs(a.y() - b.y()),
                            std::abs(a.z() - b.z()), std::abs(a.w() - b.w())});
      c.expect(back.space == CoordinateSpace::PhysicalStage, "space tag lost");
    }
  }
  c.expect(worst_pos <= 1e-9, "position error " + num(worst_pos));
  c.expect(worst_rot <= 1e-9, "orientation error " + num(worst_rot));
  return c.result("12 scenes x 1000 poses, max position error " + num(worst_pos) + ", orientation " +
                  num(worst_rot));
}

// 3. Quaternion path vs. independent 4x4 matrix composition.
Outcome oracle_equivalence() {
  Check c;
  t::Gen g(77);
  const auto& scenes = t::published_scenes();
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto& s = scenes[static_cast<std::size_t>(i) % scenes.size()];
    const double n = std::sqrt(s.q[0] * s.q[0] + s.q[1] * s.q[1] + s.q[2] * s.q[2] + s.q[3] * s.q[3]);
    const t::M4 world = t::affine(t::rotation_of({s.q[0] / n, s.q[1] / n, s.q[2] / n, s.q[3] / n}),
                                  {s.init_pos[0], s.init_pos[1], s.init_pos[2]}, s.scale);
    const Pose p = g.pose(3, CoordinateSpace::PhysicalStage);
    const t::M4 oracle = t::mul(world, t::affine(t::rotation_of(p.orientation.raw()), p.position));
    const Pose v = apply_scene_init(p, scene_registry().lookup(s.scene));
    const Mat4 lib = pose_to_mat(v);
    for (int r = 0; r < 3; ++r) {
      worst = std::max(worst, std::abs(oracle[r][3] - lib(r, 3)));
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(oracle[r][k] / s.scale - lib(r, k)));
    }
  }
  c.expect(worst <= 1e-9, "max deviation " + num(worst));
  return c.result("10000 poses, max deviation " + num(worst));
}

// 4. Handedness flip is an involution and maps +Y up to +Y down.
Outcome handedness() {
  Check c;
  t::Gen g(4);
  for (int i = 0; i < 10000; ++i) {
    const Pose p = g.pose(50, CoordinateSpace::VirtualWorld);
    const Pose twice = handedness_flip(handedness_flip(p));
    c.expect(twice.position == p.position, "position not restored");
    c.expect(same_rotation(twice.orientation, p.orientation, 0.0), "orientation not restored");
  }
  const Pose up{{0, 1, 0}, UnitQuat::identity(), CoordinateSpace::VirtualWorld};
  const Pose down = handedness_flip(up);
  c.expect(down.position == Vec3{0, -1, 0}, "(0,1,0) did not map to (0,-1,0)");
  const Vec3 y = quat_rotate(down.orientation, {0, 1, 0});
  c.expect(std::abs(y.y + 1) < 1e-15, "camera up axis not reversed");
  return c.result("10000 poses exact up to sign; (0,1,0) -> (0,-1,0)");
}

// 5. Frustum corners of the recorded left-eye FOV and the symmetric case.
Outcome frustum() {
  Check c;
  const FovAngles fov = synth::sample_fov(Eye::Left);
  const double n = 0.01, f = 1000;
  const Mat4 p = projection_from_fov(fov, n, f);
  const double l = std::tan(fov.left), r = std::tan(fov.right);
  const double top = std::max(std::tan(fov.top), std::tan(fov.bottom));
  const double bot = std::min(std::tan(fov.top), std::tan(fov.bottom));
  double worst = 0;
  for (double depth : {n, 0.5, 3.0, 250.0, f}) {
    for (auto [h, sx] : {std::pair{l, -1.0}, std::pair{r, 1.0}}) {
      for (auto [v, sy] : {std::pair{bot, -1.0}, std::pair{top, 1.0}}) {
        const Vec3 ndc = p.transform_point({h * depth, v * depth, -depth});
        worst = std::max({worst, std::abs(ndc.x - sx), std::abs(ndc.y - sy)});
      }
    }
  }
  c.expect(worst <= 1e-6, "corner NDC error " + num(worst));
  const Mat4 sym = projection_from_fov({-M_PI / 4, M_PI / 4, M_PI / 4, -M_PI / 4}, n, f);
  c.expect(sym(0, 0) == 1.0 && sym(1, 1) == 1.0,
           "symmetric P00=" + format_roundtrip(sym(0, 0)) + " P11=" + format_roundtrip(sym(1, 1)));
  return c.result("20 corner points, max NDC error " + num(worst) + "; symmetric P00=P11=1");
}

// 6. Head-aligned gaze lands on the principal point.
Outcome principal_point() {
  Check c;
  const Trace trace = read_trace_file(t::sample_path());
  const ImageSize image{2160, 2224};
  double worst = 0;
  for (EyeView ev : trace.rows()) {
    ev.gaze_pose = Pose{ev.eye_pose.position, ev.eye_pose.orientation, ev.eye_pose.space};
    const GazePixel px = gaze_pixel(ev, image);
    const double l = std::tan(ev.fov.left), r = std::tan(ev.fov.right);
    const double want = -l / (r - l) * image.width;
    worst = std::max(worst, std::abs(px.u - want));
    c.expect(px.in_view, "principal point not in view");
  }
  c.expect(worst <= 0.5, "u error " + num(worst) + " px");
  return c.result("4 eye views, max u error " + num(worst) + " px at 2160x2224");
}

// 7. Synthetic circle and stationary statistics.
Outcome analytics_oracle() {
  Check c;
  synth::MotionSpec spec;
  spec.duration_s = 60;
  spec.fps = 60;
  spec.path = synth::Circle{1, 2, 0, 0};
  const TraceStats s = trace_stats(synth::generate_trace(spec), SceneInit::identity());
  c.expect(s.n_frames == 3600, "n_frames " + std::to_string(s.n_frames));
  c.expect(format_fixed(s.fps, 2) == "60.00", "fps " + format_fixed(s.fps, 2));
  const double rel = std::abs(s.distance_m - 4 * M_PI) / (4 * M_PI);
  c.expect(rel <= 1e-3, "distance off by " + num(rel * 100) + "%");

  spec.path = synth::Stationary{0.3, -0.2};
  const TraceStats still = trace_stats(synth::generate_trace(spec), SceneInit::identity());
  c.expect(still.distance_m == 0.0, "stationary distance " + num(still.distance_m));
  return c.result("n=3600, fps=" + format_fixed(s.fps, 2) + ", distance " + num(s.distance_m) +
                  " m (4pi rel. error " + num(rel) + "), stationary 0");
}

// 8. csv -> json -> csv on synthetic traces.
Outcome interop() {
  Check c;
  t::Gen g(8);
  double worst = 0;
  const auto scenes = scene_registry().entries();
  for (int i = 0; i < 100; ++i) {
    synth::MotionSpec spec;
    spec.duration_s = g.uniform(0.5, 2);
    spec.fps = g.uniform(30, 90);
    spec.path = synth::Circle{g.uniform(0.2, 1.4), g.uniform(0.5, 3), g.uniform(-0.2, 0.2), 0};
    spec.gaze_offset_deg = g.uniform(-20, 20);
    spec.jitter_m = 0.005;
    spec.seed = static_cast<std::uint64_t>(i);
    const SceneInit& init = scenes[static_cast<std::size_t>(i) % scenes.size()];
    spec.scene_id = init.scene_id;
    const Trace trace = synth::generate_trace(spec, init);
    for (bool flip : {false, true}) {
      const std::string csv = write_trace_csv(trace);
      const Trace parsed = parse_trace_csv(csv, trace.user_id(), trace.scene_id());
      const std::string json = write_camera_path(csv_to_json(parsed, flip));
      const Trace back = parse_trace_csv(write_trace_csv(json_to_csv(read_camera_path(json))),
                                         trace.user_id(), trace.scene_id());
      const auto a = parsed.rows(), b = back.rows();
      c.expect(a.size() == b.size(), "row count changed");
      for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
        auto cmp = [&](const Pose& x, const Pose& y) {
          const UnitQuat qa = x.orientation.canonical(), qb = y.orientation.canonical();
          worst = std::max({worst, distance(x.position, y.position), std::abs(qa.x() - qb.x()),
                            std::abs(qa.y() - qb.y()), std::abs(qa.z() - qb.z()), std::abs(qa.w() - qb.w())});
        };
        cmp(a[k].eye_pose, b[k].eye_pose);
        cmp(*a[k].gaze_pose, *b[k].gaze_pose);
        c.expect(a[k].fov == b[k].fov && a[k].timestamp_ms == b[k].timestamp_ms && a[k].eye == b[k].eye,
                 "non-pose field changed");
      }
    }
  }
  c.expect(worst <= 1e-9, "pose deviation " + num(worst));
  return c.result("100 traces x {recorded, flipped}, max pose deviation " + num(worst));
}

// 9. Dataset statistics. Uses the published dataset when EYENAV_DATASET_ROOT
// points at it; otherwise a synthetic dataset with known answers goes
// through the same scan / aggregate / CLI path.
struct SiteTarget {
  const char* site;
  double frames, fps, distance;
  double scene_fps[12];
};
const char* const kSceneOrder[12] = {"alameda", "berlin", "bicycle", "drjohnson", "london", "nyc",
                                     "playroom", "room", "stump", "train", "treehill", "truck"};
const SiteTarget kTargets[2] = {
    {"RU", 3420, 57.04, 17.27, {43.68, 55.33, 42.12, 37.47, 65.32, 44.18, 47.53, 71.37, 68.80, 71.30, 70.91, 69.75}},
    {"NTHU", 2396, 39.95, 13.62, {36.68, 40.62, 33.15, 33.81, 45.86, 37.66, 36.67, 41.80, 44.43, 43.65, 41.63, 43.17}},
};

Outcome published_dataset(const fs::path& root) {
  Check c;
  fs::path sites_path;
  if (const char* s = std::getenv("EYENAV_SITE_MAP"); s && *s) {
    sites_path = s;
  } else if (fs::exists(root / "sites.csv")) {
    sites_path = root / "sites.csv";
  }
  if (sites_path.empty()) {
    return {false, "dataset found but no user->site map (set EYENAV_SITE_MAP or add sites.csv)"};
  }
  AggregateOptions opts;
  opts.sites = parse_site_map(read_text_file(sites_path));
  const AggregateResult res = aggregate_stats(scan_dataset(root), scene_registry(), opts);
  std::ostringstream report;
  auto within = [&](double got, double want, const std::string& label) {
    const double rel = std::abs(got - want) / want;
    report << ' ' << label << '=' << format_fixed(got, 2) << " (" << format_fixed(rel * 100, 2) << "%)";
    c.expect(rel <= 0.01, label + " " + format_fixed(got, 2) + " vs " + format_fixed(want, 2));
  };
  for (const SiteTarget& target : kTargets) {
    const AggregateRow* site = nullptr;
    for (const auto& r : res.table.per_site)
      if (r.site == target.site) site = &r;
    c.expect(site != nullptr, std::string("no traces for site ") + target.site);
    if (!site) continue;
    report << ' ' << target.site << ':';
    within(site->mean_frames, target.frames, "frames");
    within(site->mean_fps, target.fps, "fps");
    within(site->mean_distance_m, target.distance, "distance");
    for (int k = 0; k < 12; ++k) {
      for (const auto& r : res.table.per_scene) {
        if (r.site == target.site && r.scene == kSceneOrder[k]) within(r.mean_fps, target.scene_fps[k], r.scene);
      }
    }
  }
  std::cerr << "AC9 detail:" << report.str() << '\n';
  for (const auto& w : res.warnings) std::cerr << "AC9 warning: " << w << '\n';
  return c.result("published dataset within 1% of the site and per-scene tables");
}

Outcome synthetic_dataset() {
  Check c;
  const fs::path root = fs::temp_directory_path() / "eyenav_acceptance_dataset";
  fs::remove_all(root);
  struct User {
    const char* id;
    const char* site;
    double fps, radius;
  };
  const User users[] = {{"user101", "RU", 72, 1.0}, {"user102", "RU", 60, 0.5},
                        {"user201", "NTHU", 40, 0.8}, {"user202", "NTHU", 36, 0.6}};
  const char* scenes[] = {"truck", "london", "nyc"};
  std::string sites = "user,site\n";
  for (const User& u : users) sites += std::string(u.id) + "," + u.site + "\n";
  fs::create_directories(root);
  write_text_file(root / "sites.csv", sites);

  // Expected per-site means from closed forms.
  struct Expect {
    double frames = 0, fps = 0, distance = 0;
    int n = 0;
  };
  std::map<std::string, Expect> expect;
  const double seconds = 3;
  for (const char* scene : scenes) {
    fs::create_directories(root / scene);
    for (const User& u : users) {
      synth::MotionSpec spec;
      spec.duration_s = seconds;
      spec.fps = u.fps;
      spec.path = synth::Circle{u.radius, 1, 0, 0};
      spec.user_id = u.id;
      spec.scene_id = scene;
      write_text_file(root / scene / (std::string(u.id) + "_" + scene + ".csv"),
                      write_trace_csv(synth::generate_trace(spec, scene_registry().lookup(scene))));
      const double n = std::round(seconds * u.fps);
      Expect& e = expect[u.site];
      e.frames += n;
      e.fps += u.fps;
      e.distance += (n - 1) * 2 * u.radius * std::sin(M_PI / (n - 1));
      ++e.n;
    }
  }

  const std::string root_s = root.string(), sites_s = (root / "sites.csv").string();
  const char* argv[] = {"eyenav", "stats", "--aggregate", root_s.c_str(), "--sites", sites_s.c_str(),
                        "--format", "csv", "--threads", "3"};
  std::ostringstream out, err;
  const int code = cli::run(10, argv, out, err);
  c.expect(code == 0, "stats --aggregate exit " + std::to_string(code) + ": " + err.str());

  AggregateOptions opts;
  opts.sites = parse_site_map(sites);
  const AggregateResult res = aggregate_stats(scan_dataset(root), scene_registry(), opts);
  c.expect(res.traces.size() == 12, "expected 12 traces");
  c.expect(out.str().find(render_aggregate_csv(res.table)) != std::string::npos, "CLI output differs from library");
  for (const auto& row : res.table.per_site) {
    const Expect& e = expect[row.site];
    c.expect(std::abs(row.mean_frames - e.frames / e.n) < 1e-9, row.site + " frames");
    c.expect(std::abs(row.mean_fps - e.fps / e.n) < 1e-9, row.site + " fps " + num(row.mean_fps));
    c.expect(std::abs(row.mean_distance_m - e.distance / e.n) < 1e-9, row.site + " distance");
  }
  for (const auto& row : res.table.per_scene) {
    const double want = row.site == "RU" ? 66.0 : 38.0;
    c.expect(std::abs(row.mean_fps - want) < 1e-9, row.site + "/" + row.scene + " fps");
  }
  fs::remove_all(root);
  return c.result("dataset absent: synthetic 2-site dataset reproduces closed-form means via stats --aggregate");
}

Outcome dataset_stats() {
  const char* root = std::getenv(cli::kDatasetRootEnv);
  if (root && *root && fs::is_directory(root)) return published_dataset(root);
  return synthetic_dataset();
}

// 10. Malformed inputs are reported with the right code and row.
Outcome validation_suite() {
  Check c;
  const std::string header =
      "ViewIndex,FOV1,FOV2,FOV3,FOV4,Pos_X,Pos_Y,Pos_Z,Quat_X,Quat_Y,Quat_Z,Quat_W,Timestamp\n";
  auto row = [](int eye, double ts, const char* quat = "0,0,0,1") {
    return std::to_string(eye) + ",-0.9,0.7,-0.9,0.7," + (eye ? "0.03" : "-0.03") + ",1.6,0," + quat + "," +
           format_significant(ts) + "\n";
  };
  auto expect_code = [&](const std::string& name, const std::string& text, bool strict, const std::string& code,
                         std::size_t want_row) {
    ValidationOptions opts;
    opts.strict = strict;
    ValidationReport report;
    try {
      parse_trace_csv(text, "user1", "room", opts, &report);
    } catch (const TraceValidationError& e) {
      report = e.report();
    }
    const Diagnostic* d = report.find(code);
    c.expect(d != nullptr && d->severity == Severity::Error, name + ": no " + code + " error");
    if (d) c.expect(d->row == want_row, name + ": row " + std::to_string(d->row) + " != " + std::to_string(want_row));
  };

  expect_code("odd rows", header + row(0, 0) + row(1, 0) + row(0, 14), true, "unpaired-row", 3);
  expect_code("broken pattern", header + row(0, 0) + row(1, 0) + row(0, 14) + row(0, 14) + row(1, 14), false,
              "eye-pairing", 4);
  expect_code("non-unit quaternion",
              header + row(0, 0) + row(1, 0) + row(0, 14, "0.5,0.5,0.5,0.6") + row(1, 14, "0.5,0.5,0.5,0.6"),
              false, "non-unit-quaternion", 3);
  expect_code("timestamp regression", header + row(0, 0) + row(1, 0) + row(0, 28) + row(1, 28) + row(0, 14) +
                                          row(1, 14),
              false, "timestamp-regression", 5);

  ValidationReport scene;
  check_scene("garden", scene_registry(), scene);
  const Diagnostic* d = scene.find("unknown-scene");
  c.expect(d != nullptr && d->message.find("garden") != std::string::npos, "unknown scene not reported");
  bool threw = false;
  try {
    scene_registry().lookup("garden");
  } catch (const UnknownSceneError& e) {
    threw = e.scene() == "garden";
  }
  c.expect(threw, "lookup of unknown scene did not throw");
  return c.result("odd rows, broken eye pattern, non-unit quaternion, timestamp regression, unknown scene");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_s;  // 0 = no runtime limit
  };
  const std::vector<Criterion> criteria{
      {1, "golden sample parse", golden_parse, 1.0},
      {2, "scene-init inverse", scene_inverse, 5.0},
      {3, "matrix oracle equivalence", oracle_equivalence, 0},
      {4, "handedness involution", handedness, 0},
      {5, "frustum correctness", frustum, 0},
      {6, "gaze principal point", principal_point, 0},
      {7, "analytics oracle", analytics_oracle, 0},
      {8, "interop round trip", interop, 0},
      {9, "dataset statistics", dataset_stats, 0},
      {10, "validation suite", validation_suite, 0},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      o.pass = false;
      o.detail += "; runtime " + format_fixed(secs, 3) + " s over " + format_fixed(cr.limit_s, 0) + " s";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  AC" << cr.id << ' ' << cr.name << ": " << o.detail << " ["
              << format_fixed(secs, 3) << " s]\n";
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
