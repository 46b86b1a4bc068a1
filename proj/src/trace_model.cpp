#include "eyenav/trace_model.hpp"

#include <algorithm>
#include <numbers>

#include "eyenav/error.hpp"

namespace eyenav {

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

UnitQuat UnitQuat::normalized(Quat q) {
  const double n = std::sqrt(q.norm_squared());
  if (!std::isfinite(n) || n < 1e-12) {
    throw GeometryError("degenerate quaternion");
  }
  return UnitQuat(Quat{q.x / n, q.y / n, q.z / n, q.w / n});
}

UnitQuat unit_quat_from_normalized(Quat q) { return UnitQuat(q); }

UnitQuat UnitQuat::canonical() const {
  bool negate = false;
  if (q_.w != 0.0) {
    negate = q_.w < 0.0;
  } else if (q_.x != 0.0) {
    negate = q_.x < 0.0;
  } else if (q_.y != 0.0) {
    negate = q_.y < 0.0;
  } else {
    negate = q_.z < 0.0;
  }
  if (!negate) return *this;
  return UnitQuat(Quat{-q_.x, -q_.y, -q_.z, -q_.w});
}

bool same_rotation(UnitQuat a, UnitQuat b, double tolerance) {
  const Quat ca = a.canonical().raw();
  const Quat cb = b.canonical().raw();
  return std::abs(ca.x - cb.x) <= tolerance && std::abs(ca.y - cb.y) <= tolerance &&
         std::abs(ca.z - cb.z) <= tolerance && std::abs(ca.w - cb.w) <= tolerance;
}

// ---------------------------------------------------------------------------
// Poses
// ---------------------------------------------------------------------------

std::string_view to_string(CoordinateSpace space) {
  switch (space) {
    case CoordinateSpace::VirtualWorld:
      return "virtual_world";
    case CoordinateSpace::PhysicalStage:
      return "physical_stage";
  }
  return "unknown";
}

CoordinateSpace parse_space(std::string_view text) {
  if (text == "virtual_world") return CoordinateSpace::VirtualWorld;
  if (text == "physical_stage") return CoordinateSpace::PhysicalStage;
  throw InvalidArgument("unknown coordinate space '" + std::string(text) + "'");
}

bool same_pose(const Pose& a, const Pose& b, double tolerance) {
  return a.space == b.space && std::abs(a.position.x - b.position.x) <= tolerance &&
         std::abs(a.position.y - b.position.y) <= tolerance &&
         std::abs(a.position.z - b.position.z) <= tolerance &&
         same_rotation(a.orientation, b.orientation, tolerance);
}

bool FovAngles::is_valid() const {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  for (double a : {left, right, top, bottom}) {
    if (!std::isfinite(a) || std::abs(a) >= kHalfPi) return false;
  }
  return left < right && top != bottom;
}

// ---------------------------------------------------------------------------
// Rows, frames, traces
// ---------------------------------------------------------------------------

std::string_view column_name(CsvColumn column) {
  static constexpr std::array<std::string_view, kCsvColumnCount> kNames = {
      "ViewIndex", "FOV1",      "FOV2",      "FOV3",      "FOV4",    "Pos_X",   "Pos_Y",
      "Pos_Z",     "Quat_X",    "Quat_Y",    "Quat_Z",    "Quat_W",  "GazePos_X",
      "GazePos_Y", "GazePos_Z", "GazeQ_X",   "GazeQ_Y",   "GazeQ_Z", "GazeQ_W", "Timestamp"};
  return kNames[static_cast<std::size_t>(column)];
}

Quat EyeView::raw_head_quat() const {
  return recorded ? recorded->head_quat : eye_pose.orientation.raw();
}

std::optional<Quat> EyeView::raw_gaze_quat() const {
  if (recorded && recorded->gaze_quat) return recorded->gaze_quat;
  if (gaze_pose) return gaze_pose->orientation.raw();
  return std::nullopt;
}

Trace::Trace(std::string user_id, std::string scene_id, CoordinateSpace space,
             std::vector<Frame> frames)
    : user_id_(std::move(user_id)),
      scene_id_(std::move(scene_id)),
      space_(space),
      frames_(std::move(frames)) {
  if (frames_.empty()) throw InvalidArgument("trace has no frames");
  auto in_space = [space](const EyeView& v) {
    return v.eye_pose.space == space && (!v.gaze_pose || v.gaze_pose->space == space);
  };
  for (const Frame& f : frames_) {
    if (!in_space(f.left) || !in_space(f.right)) {
      throw InvalidArgument("trace mixes coordinate spaces");
    }
  }
}

bool Trace::has_gaze() const {
  return std::all_of(frames_.begin(), frames_.end(), [](const Frame& f) {
    return f.left.gaze_pose.has_value() && f.right.gaze_pose.has_value();
  });
}

std::vector<EyeView> Trace::rows() const {
  std::vector<EyeView> out;
  out.reserve(2 * frames_.size());
  for (const Frame& f : frames_) {
    out.push_back(f.left);
    out.push_back(f.right);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scene initialization
// ---------------------------------------------------------------------------

SceneInit SceneInit::make(std::string scene_id, Quat rotation, double scale, Vec3 init_pos) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("scene scale must be positive");
  }
  if (!is_finite(init_pos)) throw InvalidArgument("scene init position must be finite");
  if (std::abs(rotation.norm_squared() - 1.0) > 1e-3) {
    throw InvalidArgument("scene rotation is not a unit quaternion");
  }
  SceneInit init;
  init.scene_id = std::move(scene_id);
  init.recorded_rotation = rotation;
  init.rotation = UnitQuat::normalized(rotation);
  init.scale = scale;
  init.init_pos = init_pos;
  return init;
}

SceneInit SceneInit::identity() { return SceneInit{}; }

SceneRegistry::SceneRegistry(std::vector<SceneInit> entries) : entries_(std::move(entries)) {}

const SceneInit& SceneRegistry::lookup(std::string_view scene_id) const {
  for (const SceneInit& e : entries_) {
    if (e.scene_id == scene_id) return e;
  }
  throw UnknownSceneError(std::string(scene_id));
}

bool SceneRegistry::contains(std::string_view scene_id) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const SceneInit& e) { return e.scene_id == scene_id; });
}

const SceneRegistry& scene_registry() {
  // Tilt quaternion (x, y, z, w), scale, example initial position.
  static const SceneRegistry registry({
      SceneInit::make("truck", {-0.0896, 0, 0, 0.9960}, 0.76, {0, 2.1, -4}),
      SceneInit::make("treehill", {-0.1961, 0, 0, 0.9806}, 12, {2, 1.4, 2}),
      SceneInit::make("train", {0.0499, 0, 0.01, 0.9987}, 0.36, {2, -1, 6}),
      SceneInit::make("stump", {-0.3950, 0, 0, 0.9187}, 1, {-1, 2.65, -2.5}),
      SceneInit::make("room", {-0.2334, 0, 0, 0.9724}, 2, {0, 1.15, 0}),
      SceneInit::make("playroom", {-0.1961, 0, 0, 0.9806}, 2.7, {0, 0.88, 0}),
      SceneInit::make("drjohnson", {-0.3699, 0, 0.5976, 0.7114}, 1, {0, 1.5, 0}),
      SceneInit::make("bicycle", {-0.1142, 0, 0, 0.9935}, 1.25, {1.5, 1.1, 0}),
      SceneInit::make("nyc", {-0.1483, 0, 0, 0.9888}, 0.64, {-1.6, 4.4, 4}),
      SceneInit::make("london", {0, 0, 0, 1}, 0.53, {18, 12, -11}),
      SceneInit::make("berlin", {0.0299, 0, -0.0599, 0.9978}, 0.8, {-1, 1.8, -1.3}),
      SceneInit::make("alameda", {-0.1867, 0, 0, 0.9824}, 0.64, {3, 2.6, -1}),
  });
  return registry;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(items.begin(), items.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  }));
}

std::size_t ValidationReport::warning_count() const {
  return items.size() - error_count();
}

const Diagnostic* ValidationReport::find(std::string_view code) const {
  for (const Diagnostic& d : items) {
    if (d.code == code) return &d;
  }
  return nullptr;
}

namespace {

std::size_t row_number(std::span<const EyeView> rows, std::size_t i) {
  const std::size_t recorded = rows[i].row();
  return recorded != 0 ? recorded : i + 1;
}

void add(ValidationReport& report, Severity severity, std::size_t row, std::string code,
         std::string message) {
  report.items.push_back({severity, row, std::move(code), std::move(message)});
}

// Walks the rows the way the frame assembler does. `on_pair` receives the
// indices of each (left, right) pair; problems go to `report` if non-null.
template <typename OnPair>
void walk_pairs(std::span<const EyeView> rows, bool strict, ValidationReport* report,
                OnPair&& on_pair) {
  std::size_t i = 0;
  while (i < rows.size()) {
    const bool is_left = rows[i].eye == Eye::Left;
    if (is_left && i + 1 < rows.size() && rows[i + 1].eye == Eye::Right) {
      on_pair(i, i + 1);
      i += 2;
      continue;
    }
    if (report) {
      if (is_left && i + 1 == rows.size()) {
        const std::size_t r = row_number(rows, i);
        const std::string msg = "unpaired trailing row " + std::to_string(r);
        if (strict) {
          add(*report, Severity::Error, r, "unpaired-row", msg);
        } else {
          add(*report, Severity::Warning, r, "unpaired-row", msg + " dropped");
        }
      } else {
        // A left row followed by another left row breaks at the second one.
        const std::size_t bad = is_left ? i + 1 : i;
        const std::size_t r = row_number(rows, bad);
        add(*report, Severity::Error, r, "eye-pairing",
            "eye-index pairing broken at row " + std::to_string(r));
      }
    }
    ++i;
  }
}

void check_quat(ValidationReport& report, std::size_t row, const char* what, Quat q,
                double tolerance) {
  const double n2 = q.norm_squared();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > tolerance) {
    add(report, Severity::Error, row, "non-unit-quaternion",
        std::string("non-unit quaternion (") + what + ", norm^2 = " + std::to_string(n2) +
            ") at row " + std::to_string(row));
  }
}

}  // namespace

ValidationReport validate_rows(std::span<const EyeView> rows, const ValidationOptions& options) {
  ValidationReport report;
  if (rows.empty()) {
    add(report, Severity::Error, 0, "no-frames", "no frames");
    return report;
  }

  double previous_ts = rows.front().timestamp_ms;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const EyeView& v = rows[i];
    const std::size_t r = row_number(rows, i);

    check_quat(report, r, "head", v.raw_head_quat(), options.unit_norm_tolerance);
    if (auto g = v.raw_gaze_quat()) check_quat(report, r, "gaze", *g, options.unit_norm_tolerance);

    if (!is_finite(v.eye_pose.position) ||
        (v.gaze_pose && !is_finite(v.gaze_pose->position))) {
      add(report, Severity::Error, r, "non-finite", "non-finite position at row " + std::to_string(r));
    }
    if (!v.fov.is_valid()) {
      add(report, Severity::Error, r, "invalid-fov", "invalid FOV angles at row " + std::to_string(r));
    }
    if (!std::isfinite(v.timestamp_ms) || v.timestamp_ms < 0.0) {
      add(report, Severity::Error, r, "bad-timestamp",
          "timestamp must be a non-negative number at row " + std::to_string(r));
    } else if (v.timestamp_ms < previous_ts) {
      add(report, Severity::Error, r, "timestamp-regression",
          "timestamp regression at row " + std::to_string(r));
    }
    if (std::isfinite(v.timestamp_ms)) previous_ts = std::max(previous_ts, v.timestamp_ms);

    if (v.gaze_pose) {
      const double drift = distance(v.gaze_pose->position, v.eye_pose.position);
      if (drift > options.gaze_drift_limit) {
        add(report, Severity::Warning, r, "gaze-drift",
            "gaze position " + std::to_string(drift) + " from eye position at row " +
                std::to_string(r));
      }
    }
  }

  walk_pairs(rows, options.strict, &report, [&](std::size_t li, std::size_t ri) {
    const EyeView& l = rows[li];
    const EyeView& rv = rows[ri];
    const std::size_t r = row_number(rows, ri);
    if (!same_rotation(l.eye_pose.orientation, rv.eye_pose.orientation,
                       options.head_quat_tolerance)) {
      add(report, Severity::Error, r, "head-quaternion-mismatch",
          "head quaternion differs between eyes at row " + std::to_string(r));
    }
    if (l.eye_pose.position == rv.eye_pose.position) {
      add(report, Severity::Warning, r, "degenerate-ipd",
          "left and right eye positions coincide at row " + std::to_string(r));
    }
  });

  std::stable_sort(report.items.begin(), report.items.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.row < b.row; });
  return report;
}

ValidationReport validate_trace(const Trace& trace, const ValidationOptions& options) {
  const std::vector<EyeView> rows = trace.rows();
  return validate_rows(rows, options);
}

void check_scene(std::string_view scene_id, const SceneRegistry& registry, ValidationReport& report) {
  if (!registry.contains(scene_id)) {
    add(report, Severity::Error, 0, "unknown-scene", "unknown scene '" + std::string(scene_id) + "'");
  }
}

std::vector<Frame> pair_rows(std::span<const EyeView> rows) {
  std::vector<Frame> frames;
  frames.reserve(rows.size() / 2);
  walk_pairs(rows, false, nullptr,
             [&](std::size_t l, std::size_t r) { frames.push_back({rows[l], rows[r]}); });
  return frames;
}

}  // namespace eyenav
