#pragma once

#include <vector>

#include "eyenav/geometry.hpp"
#include "eyenav/io_formats.hpp"
#include "eyenav/trace_model.hpp"

namespace eyenav {

/// Per-eye render resolution of the recording headset.
inline constexpr int kDefaultImageWidth = 2160;
inline constexpr int kDefaultImageHeight = 2224;

struct ImageSize {
  int width = kDefaultImageWidth;
  int height = kDefaultImageHeight;
};

/// Viewing axis of the eye frame.
enum class ForwardAxis {
  MinusZ,  ///< X right, Y up, -Z forward (OpenXR view space)
  PlusZ,   ///< X right, Y down, +Z forward (COLMAP / OpenCV camera)
};

struct CameraOptions {
  double near = 0.01;
  double far = 1000.0;
  ImageSize image;
};

/// Camera parameters the replay feeds the renderer for one eye of one frame.
struct EyeCamera {
  Eye eye = Eye::Left;
  std::size_t frame = 0;
  Mat4 view;        ///< world -> eye
  Mat4 projection;  ///< eye -> clip, z in [-1, 1]
  double timestamp_ms = 0.0;
  ImageSize image;
};

struct GazePixel {
  double u = 0.0;  ///< pixels from the left edge
  double v = 0.0;  ///< pixels from the top edge
  bool in_view = false;
};

/// Horizontal and vertical tangent bounds of a recorded FOV. Vertical bounds
/// are (max, min) of the two vertical tangents, so the FOV3/FOV4 labeling
/// does not matter.
struct FrustumTangents {
  double left, right, top, bottom;
};

/// Throws GeometryError when left >= right or the vertical tangents coincide.
FrustumTangents frustum_tangents(const FovAngles& fov);

/// Off-axis perspective projection (OpenGL clip convention) built from the
/// four signed FOV angles. Throws GeometryError on degenerate angles or
/// near <= 0, far <= near.
Mat4 projection_from_fov(const FovAngles& fov, double near, double far);

/// Inverse of pose_to_mat(p).
Mat4 view_matrix(const Pose& p);

/// Two cameras per frame, left then right. Errors name the frame index.
std::vector<EyeCamera> camera_stream(const Trace& trace, const CameraOptions& options = {});

/// Camera stream as a camera-path document with projections attached.
CameraPathDocument camera_stream_document(const Trace& trace, const CameraOptions& options = {});

/// Where the recorded gaze ray lands on the eye's image. Throws GeometryError
/// when the view has no gaze or the direction degenerates.
GazePixel gaze_pixel(const EyeView& ev, ImageSize image = {},
                     ForwardAxis forward = ForwardAxis::MinusZ);

/// Unit forward vector of the eye frame for the convention.
Vec3 forward_vector(ForwardAxis forward);

}  // namespace eyenav
