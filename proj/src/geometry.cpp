#include "eyenav/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "eyenav/error.hpp"

namespace eyenav {

// ---------------------------------------------------------------------------
// Mat4
// ---------------------------------------------------------------------------

Mat4 Mat4::identity() {
  Mat4 r;
  r.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
  return r;
}

Mat4 Mat4::translation(Vec3 t) {
  Mat4 r = identity();
  r(0, 3) = t.x;
  r(1, 3) = t.y;
  r(2, 3) = t.z;
  return r;
}

Mat4 Mat4::scaling(double s) {
  Mat4 r = identity();
  r(0, 0) = s;
  r(1, 1) = s;
  r(2, 2) = s;
  return r;
}

Vec3 Mat4::transform_point(Vec3 p) const {
  const Mat4& a = *this;
  const double x = a(0, 0) * p.x + a(0, 1) * p.y + a(0, 2) * p.z + a(0, 3);
  const double y = a(1, 0) * p.x + a(1, 1) * p.y + a(1, 2) * p.z + a(1, 3);
  const double z = a(2, 0) * p.x + a(2, 1) * p.y + a(2, 2) * p.z + a(2, 3);
  const double w = a(3, 0) * p.x + a(3, 1) * p.y + a(3, 2) * p.z + a(3, 3);
  if (w == 1.0) return {x, y, z};
  return {x / w, y / w, z / w};
}

Vec3 Mat4::transform_direction(Vec3 d) const {
  const Mat4& a = *this;
  return {a(0, 0) * d.x + a(0, 1) * d.y + a(0, 2) * d.z,
          a(1, 0) * d.x + a(1, 1) * d.y + a(1, 2) * d.z,
          a(2, 0) * d.x + a(2, 1) * d.y + a(2, 2) * d.z};
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  }
  return r;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
  return d;
}

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

UnitQuat quat_normalize(Quat q) { return UnitQuat::normalized(q); }

Quat hamilton(Quat a, Quat b) {
  return {a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
          a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z};
}

UnitQuat quat_mul(UnitQuat a, UnitQuat b) {
  return UnitQuat::normalized(hamilton(a.raw(), b.raw()));
}

Vec3 quat_rotate(UnitQuat q, Vec3 v) {
  // v' = v + 2w (u x v) + 2 u x (u x v)
  const Vec3 u{q.x(), q.y(), q.z()};
  const Vec3 t = 2.0 * cross(u, v);
  return v + q.w() * t + cross(u, t);
}

UnitQuat quat_from_axis_angle(Vec3 axis, double angle_rad) {
  const double n = norm(axis);
  if (!(n > 0.0)) throw GeometryError("zero rotation axis");
  const double s = std::sin(angle_rad / 2.0) / n;
  return UnitQuat::normalized({axis.x * s, axis.y * s, axis.z * s, std::cos(angle_rad / 2.0)});
}

double angle_between(UnitQuat a, UnitQuat b) {
  const Quat rel = hamilton(a.conjugate().raw(), b.raw());
  const double v = std::sqrt(rel.x * rel.x + rel.y * rel.y + rel.z * rel.z);
  return 2.0 * std::atan2(v, std::abs(rel.w));
}

double angle_between(Vec3 a, Vec3 b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

Mat4 quat_to_mat(UnitQuat q) {
  const double x = q.x(), y = q.y(), z = q.z(), w = q.w();
  Mat4 r = Mat4::identity();
  r(0, 0) = 1.0 - 2.0 * (y * y + z * z);
  r(0, 1) = 2.0 * (x * y - z * w);
  r(0, 2) = 2.0 * (x * z + y * w);
  r(1, 0) = 2.0 * (x * y + z * w);
  r(1, 1) = 1.0 - 2.0 * (x * x + z * z);
  r(1, 2) = 2.0 * (y * z - x * w);
  r(2, 0) = 2.0 * (x * z - y * w);
  r(2, 1) = 2.0 * (y * z + x * w);
  r(2, 2) = 1.0 - 2.0 * (x * x + y * y);
  return r;
}

namespace {

bool rotation_block_ok(const Mat4& m, double tolerance) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m(i, k) * m(j, k);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tolerance || !std::isfinite(s)) return false;
    }
  }
  const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                     m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                     m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return std::abs(det - 1.0) <= tolerance;
}

}  // namespace

bool is_rigid(const Mat4& m, double tolerance) {
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0) return false;
  if (!std::isfinite(m(0, 3)) || !std::isfinite(m(1, 3)) || !std::isfinite(m(2, 3))) return false;
  return rotation_block_ok(m, tolerance);
}

UnitQuat mat_to_quat(const Mat4& m) {
  if (!rotation_block_ok(m, 1e-6)) throw GeometryError("matrix rotation block is not orthonormal");

  // Shepperd: pick the largest diagonal term to keep the square root well
  // conditioned.
  const double trace = m(0, 0) + m(1, 1) + m(2, 2);
  Quat q;
  if (trace > m(0, 0) && trace > m(1, 1) && trace > m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + trace);
    q = {(m(2, 1) - m(1, 2)) / s, (m(0, 2) - m(2, 0)) / s, (m(1, 0) - m(0, 1)) / s, 0.25 * s};
  } else if (m(0, 0) >= m(1, 1) && m(0, 0) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(0, 0) - m(1, 1) - m(2, 2));
    q = {0.25 * s, (m(0, 1) + m(1, 0)) / s, (m(0, 2) + m(2, 0)) / s, (m(2, 1) - m(1, 2)) / s};
  } else if (m(1, 1) >= m(2, 2)) {
    const double s = 2.0 * std::sqrt(1.0 + m(1, 1) - m(0, 0) - m(2, 2));
    q = {(m(0, 1) + m(1, 0)) / s, 0.25 * s, (m(1, 2) + m(2, 1)) / s, (m(0, 2) - m(2, 0)) / s};
  } else {
    const double s = 2.0 * std::sqrt(1.0 + m(2, 2) - m(0, 0) - m(1, 1));
    q = {(m(0, 2) + m(2, 0)) / s, (m(1, 2) + m(2, 1)) / s, 0.25 * s, (m(1, 0) - m(0, 1)) / s};
  }
  return UnitQuat::normalized(q).canonical();
}

Mat4 rigid_inverse(const Mat4& m) {
  Mat4 r = Mat4::identity();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
  }
  const Vec3 t = m.translation_part();
  for (int i = 0; i < 3; ++i) {
    r(i, 3) = -(r(i, 0) * t.x + r(i, 1) * t.y + r(i, 2) * t.z);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Poses
// ---------------------------------------------------------------------------

Mat4 pose_to_mat(const Pose& p) {
  Mat4 r = quat_to_mat(p.orientation);
  r(0, 3) = p.position.x;
  r(1, 3) = p.position.y;
  r(2, 3) = p.position.z;
  return r;
}

Pose mat_to_pose(const Mat4& m, CoordinateSpace space) {
  if (!is_rigid(m)) throw GeometryError("matrix is not a rigid transform");
  return {m.translation_part(), mat_to_quat(m), space};
}

Pose handedness_flip(const Pose& p) {
  // x180 (x) q with x180 = (1, 0, 0, 0), written out so it stays exact.
  const UnitQuat& q = p.orientation;
  const Quat flipped{q.w(), -q.z(), q.y(), -q.x()};
  return {{p.position.x, -p.position.y, -p.position.z},
          unit_quat_from_normalized(flipped),
          p.space};
}

// ---------------------------------------------------------------------------
// Scene initialization
// ---------------------------------------------------------------------------

double virtual_per_meter(const SceneInit& init, ScaleDirection direction) {
  return direction == ScaleDirection::VirtualPerMeter ? init.scale : 1.0 / init.scale;
}

Pose apply_scene_init(const Pose& p, const SceneInit& init, ScaleDirection direction) {
  if (p.space != CoordinateSpace::PhysicalStage) {
    throw SpaceMismatchError("apply_scene_init expects a physical_stage pose");
  }
  const double s = virtual_per_meter(init, direction);
  return {quat_rotate(init.rotation, s * p.position) + init.init_pos,
          quat_mul(init.rotation, p.orientation),
          CoordinateSpace::VirtualWorld};
}

Pose undo_scene_init(const Pose& p, const SceneInit& init, ScaleDirection direction) {
  if (p.space != CoordinateSpace::VirtualWorld) {
    throw SpaceMismatchError("undo_scene_init expects a virtual_world pose");
  }
  const double s = virtual_per_meter(init, direction);
  const UnitQuat inv = init.rotation.conjugate();
  return {quat_rotate(inv, p.position - init.init_pos) / s,
          quat_mul(inv, p.orientation),
          CoordinateSpace::PhysicalStage};
}

namespace {

template <typename PoseFn>
Trace map_poses(const Trace& trace, CoordinateSpace target, PoseFn&& fn) {
  auto map_view = [&](const EyeView& in) {
    EyeView out = in;
    out.recorded.reset();
    out.eye_pose = fn(in.eye_pose);
    if (in.gaze_pose) out.gaze_pose = fn(*in.gaze_pose);
    return out;
  };
  std::vector<Frame> frames;
  frames.reserve(trace.size());
  for (const Frame& f : trace.frames()) frames.push_back({map_view(f.left), map_view(f.right)});
  return Trace(trace.user_id(), trace.scene_id(), target, std::move(frames));
}

}  // namespace

Trace trace_to_stage(const Trace& trace, const SceneInit& init, ScaleDirection direction) {
  return map_poses(trace, CoordinateSpace::PhysicalStage,
                   [&](const Pose& p) { return undo_scene_init(p, init, direction); });
}

Trace trace_to_virtual(const Trace& trace, const SceneInit& init, ScaleDirection direction) {
  return map_poses(trace, CoordinateSpace::VirtualWorld,
                   [&](const Pose& p) { return apply_scene_init(p, init, direction); });
}

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

Pose head_pose(const Frame& f, double tolerance) {
  const Pose& l = f.left.eye_pose;
  const Pose& r = f.right.eye_pose;
  if (!same_rotation(l.orientation, r.orientation, tolerance)) {
    throw GeometryError("left and right head orientations differ");
  }
  if (l.space != r.space) throw SpaceMismatchError("frame mixes coordinate spaces");
  return {0.5 * (l.position + r.position), l.orientation, l.space};
}

double ipd(const Frame& f) {
  return distance(f.left.eye_pose.position, f.right.eye_pose.position);
}

}  // namespace eyenav
