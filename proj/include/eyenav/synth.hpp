#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "eyenav/geometry.hpp"
#include "eyenav/trace_model.hpp"

namespace eyenav::synth {

struct Stationary {
  double x = 0.0;
  double z = 0.0;
};

/// Walk around (center_x, center_z) on the floor plane.
struct Circle {
  double radius = 1.0;
  double revolutions = 1.0;
  double center_x = 0.0;
  double center_z = 0.0;
};

struct Line {
  double from_x = 0.0;
  double from_z = 0.0;
  double to_x = 1.0;
  double to_z = 0.0;
};

using Path = std::variant<Stationary, Circle, Line>;

struct ConstantHeight {
  double height = 1.6;
};

struct SinusoidHeight {
  double mean = 1.6;
  double amplitude = 0.05;
  double period_s = 2.0;
};

using HeightProfile = std::variant<ConstantHeight, SinusoidHeight>;

struct MotionSpec {
  double duration_s = 10.0;
  double fps = 60.0;
  Path path = Stationary{};
  HeightProfile height = ConstantHeight{};
  double ipd_m = 0.063;
  double gaze_offset_deg = 0.0;  ///< yaw of the gaze relative to the head
  double jitter_m = 0.0;         ///< uniform head-position noise amplitude
  std::uint64_t seed = 0;
  std::string user_id = "user0";
  std::string scene_id;
};

/// Throws InvalidArgument unless fps > 0, duration yields at least one frame,
/// radius >= 0, ipd > 0, jitter >= 0, and the sinusoid period is positive.
void validate(const MotionSpec& spec);

/// Number of frames: round(duration_s * fps).
std::size_t frame_count(const MotionSpec& spec);

/// Samples the path at fps. The path is parameterized over the sampled
/// interval, so a circle of n revolutions closes exactly on the last frame.
/// Heads face the direction of travel (stationary: identity), eyes sit
/// +-ipd/2 along the head's right axis, gaze = head (x) yaw(gaze_offset) at
/// the eye position, timestamps are i * 1000 / fps.
///
/// Without `init` the trace is in physical-stage space; with it every pose is
/// passed through apply_scene_init and the trace is virtual-world.
Trace generate_trace(const MotionSpec& spec, const std::optional<SceneInit>& init = std::nullopt,
                     ScaleDirection direction = ScaleDirection::VirtualPerMeter);

/// FOV angles copied from a recorded Quest Pro trace.
FovAngles sample_fov(Eye eye);

}  // namespace eyenav::synth
