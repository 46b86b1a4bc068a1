#include "eyenav/synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "eyenav/error.hpp"

namespace eyenav::synth {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct PathSample {
  double x, z;    // floor position
  double vx, vz;  // direction of travel, not normalized; zero when standing
};

PathSample sample_path(const Path& path, double fraction) {
  return std::visit(
      overloaded{
          [](const Stationary& s) { return PathSample{s.x, s.z, 0.0, 0.0}; },
          [fraction](const Circle& c) {
            const double theta = 2.0 * std::numbers::pi * c.revolutions * fraction;
            const double turn = c.revolutions >= 0.0 ? 1.0 : -1.0;
            const double speed = c.radius > 0.0 && c.revolutions != 0.0 ? turn : 0.0;
            return PathSample{c.center_x + c.radius * std::cos(theta),
                              c.center_z + c.radius * std::sin(theta),
                              -speed * std::sin(theta), speed * std::cos(theta)};
          },
          [fraction](const Line& l) {
            return PathSample{l.from_x + fraction * (l.to_x - l.from_x),
                              l.from_z + fraction * (l.to_z - l.from_z), l.to_x - l.from_x,
                              l.to_z - l.from_z};
          },
      },
      path);
}

double sample_height(const HeightProfile& profile, double t_s) {
  return std::visit(
      overloaded{
          [](const ConstantHeight& h) { return h.height; },
          [t_s](const SinusoidHeight& h) {
            return h.mean + h.amplitude * std::sin(2.0 * std::numbers::pi * t_s / h.period_s);
          },
      },
      profile);
}

// Yaw about +Y that turns the -Z forward axis onto (vx, 0, vz).
UnitQuat heading(double vx, double vz) {
  if (vx == 0.0 && vz == 0.0) return UnitQuat::identity();
  return quat_from_axis_angle({0, 1, 0}, std::atan2(-vx, -vz));
}

// Uniform in [-1, 1] from the raw 64-bit engine output, so the sequence does
// not depend on the standard library's distribution implementation.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

FovAngles sample_fov(Eye eye) {
  if (eye == Eye::Left) return {-0.942478, 0.698132, -0.942478, 0.733038};
  return {-0.698132, 0.942478, -0.942478, 0.733038};
}

void validate(const MotionSpec& spec) {
  if (!(spec.fps > 0.0) || !std::isfinite(spec.fps)) throw InvalidArgument("fps must be positive");
  if (!(spec.duration_s > 0.0) || !std::isfinite(spec.duration_s)) {
    throw InvalidArgument("duration must be positive");
  }
  if (std::llround(spec.duration_s * spec.fps) < 1) throw InvalidArgument("motion spec yields no frames");
  if (!(spec.ipd_m > 0.0)) throw InvalidArgument("IPD must be positive");
  if (!(spec.jitter_m >= 0.0)) throw InvalidArgument("jitter must be non-negative");
  if (!std::isfinite(spec.gaze_offset_deg)) throw InvalidArgument("gaze offset must be finite");
  if (const auto* c = std::get_if<Circle>(&spec.path); c && !(c->radius >= 0.0)) {
    throw InvalidArgument("circle radius must be non-negative");
  }
  if (const auto* s = std::get_if<SinusoidHeight>(&spec.height); s && !(s->period_s > 0.0)) {
    throw InvalidArgument("height period must be positive");
  }
}

std::size_t frame_count(const MotionSpec& spec) {
  return static_cast<std::size_t>(std::llround(spec.duration_s * spec.fps));
}

Trace generate_trace(const MotionSpec& spec, const std::optional<SceneInit>& init,
                     ScaleDirection direction) {
  validate(spec);
  const std::size_t n = frame_count(spec);
  std::mt19937_64 rng(spec.seed);
  const UnitQuat gaze_offset =
      quat_from_axis_angle({0, 1, 0}, spec.gaze_offset_deg * std::numbers::pi / 180.0);

  auto place = [&](Pose p) {
    return init ? apply_scene_init(p, *init, direction) : p;
  };

  std::vector<Frame> frames;
  frames.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fraction = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
    const double t_ms = static_cast<double>(i) * 1000.0 / spec.fps;
    const PathSample s = sample_path(spec.path, fraction);

    Vec3 head{s.x, sample_height(spec.height, t_ms / 1000.0), s.z};
    if (spec.jitter_m > 0.0) {
      head = head + spec.jitter_m * Vec3{symmetric_unit(rng), symmetric_unit(rng), symmetric_unit(rng)};
    }
    const UnitQuat q = heading(s.vx, s.vz);
    const Vec3 half = (0.5 * spec.ipd_m) * quat_rotate(q, {1, 0, 0});
    const UnitQuat gaze_q = quat_mul(q, gaze_offset);

    auto make_view = [&](Eye eye, Vec3 position) {
      EyeView ev;
      ev.eye = eye;
      ev.fov = sample_fov(eye);
      ev.timestamp_ms = t_ms;
      ev.eye_pose = place({position, q, CoordinateSpace::PhysicalStage});
      ev.gaze_pose = place({position, gaze_q, CoordinateSpace::PhysicalStage});
      return ev;
    };
    frames.push_back({make_view(Eye::Left, head - half), make_view(Eye::Right, head + half)});
  }

  const CoordinateSpace space = init ? CoordinateSpace::VirtualWorld : CoordinateSpace::PhysicalStage;
  return Trace(spec.user_id, spec.scene_id, space, std::move(frames));
}

}  // namespace eyenav::synth
