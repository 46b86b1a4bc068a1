#pragma once

#include <array>

#include "eyenav/trace_model.hpp"

namespace eyenav {

/// Row-major 4x4 homogeneous transform.
struct Mat4 {
  std::array<double, 16> m{};

  static Mat4 identity();
  static Mat4 translation(Vec3 t);
  static Mat4 scaling(double s);

  double& operator()(int row, int col) { return m[static_cast<std::size_t>(row * 4 + col)]; }
  double operator()(int row, int col) const { return m[static_cast<std::size_t>(row * 4 + col)]; }

  Vec3 translation_part() const { return {m[3], m[7], m[11]}; }

  /// Applies the transform to a point (w = 1), dividing by the resulting w.
  Vec3 transform_point(Vec3 p) const;
  /// Applies the linear part only.
  Vec3 transform_direction(Vec3 d) const;

  friend Mat4 operator*(const Mat4& a, const Mat4& b);
  friend bool operator==(const Mat4&, const Mat4&) = default;
};

/// Largest absolute entry-wise difference.
double max_abs_diff(const Mat4& a, const Mat4& b);

// ---------------------------------------------------------------------------
// Quaternion algebra. Hamilton product, (x, y, z, w) storage.
// ---------------------------------------------------------------------------

/// Throws GeometryError("degenerate quaternion") when |q| <= 1e-12.
UnitQuat quat_normalize(Quat q);

/// a (x) b: rotates by b first, then by a. Result re-normalized.
UnitQuat quat_mul(UnitQuat a, UnitQuat b);

/// Unnormalized Hamilton product.
Quat hamilton(Quat a, Quat b);

/// q v q^-1
Vec3 quat_rotate(UnitQuat q, Vec3 v);

/// Rotation of `angle_rad` about `axis` (need not be unit, must be nonzero).
UnitQuat quat_from_axis_angle(Vec3 axis, double angle_rad);

/// Rotation angle in [0, pi] between two orientations.
double angle_between(UnitQuat a, UnitQuat b);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(Vec3 a, Vec3 b);

/// Rotation-only homogeneous matrix.
Mat4 quat_to_mat(UnitQuat q);

/// Extracts the rotation of `m`'s upper-left 3x3 block, sign canonical (w >= 0).
/// Throws GeometryError if that block is not orthonormal with determinant +1
/// within 1e-6.
UnitQuat mat_to_quat(const Mat4& m);

/// True when the upper-left 3x3 block is a rotation within `tolerance` and the
/// last row is (0, 0, 0, 1).
bool is_rigid(const Mat4& m, double tolerance = 1e-6);

/// Inverse of a rigid transform (rotation block transposed).
Mat4 rigid_inverse(const Mat4& m);

// ---------------------------------------------------------------------------
// Poses
// ---------------------------------------------------------------------------

/// translation(position) * quat_to_mat(orientation)
Mat4 pose_to_mat(const Pose& p);

/// Inverse of pose_to_mat. Throws GeometryError when not rigid.
Pose mat_to_pose(const Mat4& m, CoordinateSpace space);

/// 180 degree rotation about X.
inline constexpr Quat kFlipX{1.0, 0.0, 0.0, 0.0};

/// Switches between the +Y-up (OpenXR) and +Y-down (COLMAP) conventions:
/// (x, y, z) -> (x, -y, -z) and q -> x180 (x) q. Applying it twice returns the
/// same pose; the orientation comes back as -q, which is the same rotation.
Pose handedness_flip(const Pose& p);

// ---------------------------------------------------------------------------
// Scene initialization
// ---------------------------------------------------------------------------

/// How SceneInit::scale relates the two spaces.
enum class ScaleDirection {
  VirtualPerMeter,   ///< virtual = scale * physical (default)
  MetersPerVirtual,  ///< virtual = physical / scale
};

/// Scene units per meter for the given interpretation.
double virtual_per_meter(const SceneInit& init, ScaleDirection direction);

/// Stage pose -> virtual-world pose:
///   position' = rotate(q_init, s * position) + init_pos
///   orientation' = q_init (x) orientation
/// Throws SpaceMismatchError unless `p` is in PhysicalStage space.
Pose apply_scene_init(const Pose& p, const SceneInit& init,
                      ScaleDirection direction = ScaleDirection::VirtualPerMeter);

/// Exact inverse of apply_scene_init. Throws SpaceMismatchError unless `p` is
/// in VirtualWorld space.
Pose undo_scene_init(const Pose& p, const SceneInit& init,
                     ScaleDirection direction = ScaleDirection::VirtualPerMeter);

/// Every eye and gaze pose of a virtual-world trace taken to stage space.
/// Throws SpaceMismatchError for a stage-space trace.
Trace trace_to_stage(const Trace& trace, const SceneInit& init,
                     ScaleDirection direction = ScaleDirection::VirtualPerMeter);

/// Every eye and gaze pose of a stage-space trace taken to virtual-world space.
Trace trace_to_virtual(const Trace& trace, const SceneInit& init,
                       ScaleDirection direction = ScaleDirection::VirtualPerMeter);

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

/// Midpoint of the two eye positions with the shared head orientation.
/// Throws GeometryError when the eyes disagree on orientation by more than
/// `tolerance` per component (up to sign).
Pose head_pose(const Frame& f, double tolerance = 1e-6);

/// Distance between the two eye positions.
double ipd(const Frame& f);

}  // namespace eyenav
