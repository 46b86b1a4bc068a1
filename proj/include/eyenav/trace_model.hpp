#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace eyenav {

// ---------------------------------------------------------------------------
// Vectors and quaternions
// ---------------------------------------------------------------------------

/// Position or direction. Units are scene units in virtual-world space and
/// meters in physical-stage space.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
  friend constexpr Vec3 operator*(Vec3 v, double s) { return s * v; }
  friend constexpr Vec3 operator/(Vec3 v, double s) { return {v.x / s, v.y / s, v.z / s}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline double distance(Vec3 a, Vec3 b) { return norm(a - b); }
inline bool is_finite(Vec3 v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Raw quaternion as stored on disk, component order (x, y, z, w).
/// No normalization is implied.
struct Quat {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  double norm_squared() const { return x * x + y * y + z * z + w * w; }
  friend constexpr bool operator==(Quat, Quat) = default;
};

/// Quaternion known to have unit norm (within 1e-12).
class UnitQuat {
 public:
  /// Identity rotation.
  constexpr UnitQuat() = default;

  /// Normalizes `q`. Throws GeometryError if its norm is below 1e-12.
  static UnitQuat normalized(Quat q);

  static constexpr UnitQuat identity() { return {}; }

  constexpr double x() const { return q_.x; }
  constexpr double y() const { return q_.y; }
  constexpr double z() const { return q_.z; }
  constexpr double w() const { return q_.w; }
  constexpr Quat raw() const { return q_; }

  /// Inverse rotation; exact for unit quaternions.
  constexpr UnitQuat conjugate() const { return UnitQuat(Quat{-q_.x, -q_.y, -q_.z, q_.w}); }

  /// Same rotation with w >= 0 (if w == 0, first nonzero of x, y, z >= 0).
  /// Only used for comparisons; never applied before writing.
  UnitQuat canonical() const;

  friend constexpr bool operator==(UnitQuat, UnitQuat) = default;

 private:
  constexpr explicit UnitQuat(Quat q) : q_(q) {}
  friend UnitQuat unit_quat_from_normalized(Quat q);

  Quat q_{};
};

/// Wraps components the caller has already normalized. Internal use.
UnitQuat unit_quat_from_normalized(Quat q);

/// True when `a` and `b` describe the same rotation: the canonical forms agree
/// component-wise within `tolerance`.
bool same_rotation(UnitQuat a, UnitQuat b, double tolerance = 0.0);

// ---------------------------------------------------------------------------
// Poses
// ---------------------------------------------------------------------------

enum class CoordinateSpace { VirtualWorld, PhysicalStage };

std::string_view to_string(CoordinateSpace space);
/// Accepts "virtual_world" / "physical_stage". Throws InvalidArgument otherwise.
CoordinateSpace parse_space(std::string_view text);

struct Pose {
  Vec3 position;
  UnitQuat orientation;
  CoordinateSpace space = CoordinateSpace::VirtualWorld;
};

/// Positions equal within `tolerance`, orientations equal up to sign within
/// `tolerance`, same space tag.
bool same_pose(const Pose& a, const Pose& b, double tolerance = 0.0);

/// Recorded FOV angles in radians, FOV1..FOV4 in file order.
struct FovAngles {
  double left = 0.0;
  double right = 0.0;
  double top = 0.0;
  double bottom = 0.0;

  /// left < right, top != bottom, every |angle| < pi/2, all finite.
  bool is_valid() const;
  friend constexpr bool operator==(FovAngles, FovAngles) = default;
};

enum class Eye : int { Left = 0, Right = 1 };

// ---------------------------------------------------------------------------
// CSV columns (the recorded trace schema)
// ---------------------------------------------------------------------------

enum class CsvColumn : std::size_t {
  ViewIndex,
  Fov1, Fov2, Fov3, Fov4,
  PosX, PosY, PosZ,
  QuatX, QuatY, QuatZ, QuatW,
  GazePosX, GazePosY, GazePosZ,
  GazeQX, GazeQY, GazeQZ, GazeQW,
  Timestamp,
};

inline constexpr std::size_t kCsvColumnCount = 20;

/// Canonical header name, e.g. "GazeQ_X".
std::string_view column_name(CsvColumn column);

/// What a row looked like on disk. Kept so that writing a parsed trace
/// reproduces the original text and so validation can see pre-normalization
/// quaternions.
struct RecordedRow {
  std::size_t row = 0;                           ///< 1-based data row
  std::array<std::string, kCsvColumnCount> text;  ///< trimmed field text, empty if absent
  Quat head_quat;
  std::optional<Quat> gaze_quat;
};

/// One CSV row: the view of one eye in one rendered frame.
struct EyeView {
  Eye eye = Eye::Left;
  FovAngles fov;
  Pose eye_pose;
  std::optional<Pose> gaze_pose;  ///< absent when the headset logged no gaze
  double timestamp_ms = 0.0;
  std::shared_ptr<const RecordedRow> recorded;  ///< null for synthesized rows

  /// Head quaternion before normalization (the recorded one when available).
  Quat raw_head_quat() const;
  std::optional<Quat> raw_gaze_quat() const;
  std::size_t row() const { return recorded ? recorded->row : 0; }
};

/// Left and right views of one rendered frame.
struct Frame {
  EyeView left;
  EyeView right;

  /// Frame timestamp is the left row's timestamp.
  double timestamp_ms() const { return left.timestamp_ms; }
};

/// Ordered frames of one user's session in one scene.
class Trace {
 public:
  /// Throws InvalidArgument when `frames` is empty or any pose carries a space
  /// tag other than `space`.
  Trace(std::string user_id, std::string scene_id, CoordinateSpace space,
        std::vector<Frame> frames);

  const std::string& user_id() const { return user_id_; }
  const std::string& scene_id() const { return scene_id_; }
  CoordinateSpace space() const { return space_; }
  std::span<const Frame> frames() const { return frames_; }
  std::size_t size() const { return frames_.size(); }
  const Frame& operator[](std::size_t i) const { return frames_[i]; }

  /// True when every row carries gaze data.
  bool has_gaze() const;

  /// Left, right, left, right, ... in file order.
  std::vector<EyeView> rows() const;

 private:
  std::string user_id_;
  std::string scene_id_;
  CoordinateSpace space_;
  std::vector<Frame> frames_;
};

// ---------------------------------------------------------------------------
// Scene initialization
// ---------------------------------------------------------------------------

/// Per-scene correction applied when a scene is loaded.
struct SceneInit {
  std::string scene_id;  ///< empty for ad-hoc parameters
  Quat recorded_rotation;  ///< rounded value as published
  UnitQuat rotation;       ///< tilt correction, normalized
  double scale = 1.0;      ///< scene units per meter
  Vec3 init_pos;           ///< starting position, scene units

  /// Normalizes `rotation`. Throws InvalidArgument if scale <= 0 or the
  /// quaternion's squared norm deviates from 1 by more than 1e-3.
  static SceneInit make(std::string scene_id, Quat rotation, double scale, Vec3 init_pos);
  static SceneInit identity();
};

/// Initialization parameters for the twelve published scenes.
class SceneRegistry {
 public:
  explicit SceneRegistry(std::vector<SceneInit> entries);

  /// Throws UnknownSceneError.
  const SceneInit& lookup(std::string_view scene_id) const;
  bool contains(std::string_view scene_id) const;
  std::span<const SceneInit> entries() const { return entries_; }

 private:
  std::vector<SceneInit> entries_;
};

const SceneRegistry& scene_registry();

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::size_t row = 0;  ///< 1-based data row, 0 when not row-specific
  std::string code;     ///< stable identifier, e.g. "eye-pairing"
  std::string message;
};

struct ValidationReport {
  std::vector<Diagnostic> items;

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool ok() const { return error_count() == 0; }
  /// First diagnostic with the given code, or nullptr.
  const Diagnostic* find(std::string_view code) const;
};

struct ValidationOptions {
  bool strict = false;
  double gaze_drift_limit = 0.5;     ///< scene units between gaze and eye position
  double unit_norm_tolerance = 1e-3; ///< allowed |norm^2 - 1| of recorded quaternions
  double head_quat_tolerance = 1e-6; ///< per component, left vs right of one frame
};

/// Checks a flat row sequence against every trace invariant. Rows that do not
/// pair as (left, right) are reported; a lone trailing left row is an error
/// in strict mode and a dropped-row warning otherwise.
ValidationReport validate_rows(std::span<const EyeView> rows, const ValidationOptions& options = {});

ValidationReport validate_trace(const Trace& trace, const ValidationOptions& options = {});

/// Adds an "unknown-scene" error when `scene_id` is not in `registry`.
void check_scene(std::string_view scene_id, const SceneRegistry& registry, ValidationReport& report);

/// Pairs rows into frames following the same rules as validate_rows; rows
/// that cannot be paired are dropped.
std::vector<Frame> pair_rows(std::span<const EyeView> rows);

}  // namespace eyenav
