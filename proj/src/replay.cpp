#include "eyenav/replay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eyenav/error.hpp"

namespace eyenav {

FrustumTangents frustum_tangents(const FovAngles& fov) {
  const double l = std::tan(fov.left);
  const double r = std::tan(fov.right);
  const double a = std::tan(fov.top);
  const double b = std::tan(fov.bottom);
  if (!std::isfinite(l) || !std::isfinite(r) || !std::isfinite(a) || !std::isfinite(b)) {
    throw GeometryError("non-finite FOV angle");
  }
  if (!(l < r)) throw GeometryError("FOV left angle must be below right angle");
  if (a == b) throw GeometryError("FOV vertical angles coincide");
  return {l, r, std::max(a, b), std::min(a, b)};
}

Mat4 projection_from_fov(const FovAngles& fov, double near, double far) {
  if (!(near > 0.0) || !(far > near)) throw GeometryError("require 0 < near < far");
  frustum_tangents(fov);  // validation only
  // Entries are evaluated in extended precision and rounded once, so e.g. a
  // symmetric +-45 degree frustum gives a scale of exactly 1.
  using ld = long double;
  const ld l = std::tan(static_cast<ld>(fov.left));
  const ld r = std::tan(static_cast<ld>(fov.right));
  const ld a = std::tan(static_cast<ld>(fov.top));
  const ld b = std::tan(static_cast<ld>(fov.bottom));
  const ld t = std::max(a, b), bo = std::min(a, b);
  const ld n = near, f = far;
  Mat4 p;
  p(0, 0) = static_cast<double>(2.0L / (r - l));
  p(0, 2) = static_cast<double>((r + l) / (r - l));
  p(1, 1) = static_cast<double>(2.0L / (t - bo));
  p(1, 2) = static_cast<double>((t + bo) / (t - bo));
  p(2, 2) = static_cast<double>(-(f + n) / (f - n));
  p(2, 3) = static_cast<double>(-2.0L * f * n / (f - n));
  p(3, 2) = -1.0;
  return p;
}

Mat4 view_matrix(const Pose& p) { return rigid_inverse(pose_to_mat(p)); }

std::vector<EyeCamera> camera_stream(const Trace& trace, const CameraOptions& options) {
  std::vector<EyeCamera> cameras;
  cameras.reserve(2 * trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    for (const EyeView* ev : {&trace[i].left, &trace[i].right}) {
      EyeCamera cam;
      cam.eye = ev->eye;
      cam.frame = i;
      cam.timestamp_ms = ev->timestamp_ms;
      cam.image = options.image;
      try {
        cam.projection = projection_from_fov(ev->fov, options.near, options.far);
      } catch (const GeometryError& e) {
        throw GeometryError("frame " + std::to_string(i) +
                            (ev->eye == Eye::Left ? " (left eye): " : " (right eye): ") + e.what());
      }
      cam.view = view_matrix(ev->eye_pose);
      cameras.push_back(cam);
    }
  }
  return cameras;
}

CameraPathDocument camera_stream_document(const Trace& trace, const CameraOptions& options) {
  CameraPathDocument doc = csv_to_json(trace, false);
  const std::vector<EyeCamera> cams = camera_stream(trace, options);
  for (std::size_t i = 0; i < cams.size(); ++i) doc.frames[i].projection = cams[i].projection;
  doc.image_size = std::make_pair(options.image.width, options.image.height);
  return doc;
}

Vec3 forward_vector(ForwardAxis forward) {
  return forward == ForwardAxis::MinusZ ? Vec3{0, 0, -1} : Vec3{0, 0, 1};
}

GazePixel gaze_pixel(const EyeView& ev, ImageSize image, ForwardAxis forward) {
  if (!ev.gaze_pose) throw GeometryError("row has no gaze data");
  const FrustumTangents t = frustum_tangents(ev.fov);

  const Vec3 world_dir = quat_rotate(ev.gaze_pose->orientation, forward_vector(forward));
  Vec3 d = quat_rotate(ev.eye_pose.orientation.conjugate(), world_dir);
  // Express +Z-forward frames in the -Z-forward, Y-up frame the frustum uses.
  if (forward == ForwardAxis::PlusZ) d = {d.x, -d.y, -d.z};
  if (!(norm(d) > 1e-12)) throw GeometryError("zero-length gaze direction");

  GazePixel px;
  if (d.z == 0.0) return px;
  const double depth = std::abs(d.z);
  const double h = d.x / depth;
  const double v = d.y / depth;
  px.u = (h - t.left) / (t.right - t.left) * image.width;
  px.v = (t.top - v) / (t.top - t.bottom) * image.height;
  px.in_view = d.z < 0.0 && px.u >= 0.0 && px.u <= image.width && px.v >= 0.0 &&
               px.v <= image.height;
  return px;
}

}  // namespace eyenav
