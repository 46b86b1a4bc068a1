#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "eyenav/geometry.hpp"
#include "eyenav/io_formats.hpp"
#include "eyenav/replay.hpp"
#include "eyenav/trace_model.hpp"

namespace eyenav {

struct StatsOptions {
  ScaleDirection scale_direction = ScaleDirection::VirtualPerMeter;
  /// Head moves shorter than this (meters) from the last counted position are
  /// not added to the distance. 0 counts every segment.
  double min_displacement_m = 0.0;
};

struct TraceStats {
  std::size_t n_frames = 0;
  double duration_s = 0.0;
  double fps = 0.0;         ///< (n_frames - 1) / duration_s
  double distance_m = 0.0;  ///< head-midpoint polyline length in stage space
  double mean_speed_mps = 0.0;
  double max_speed_mps = 0.0;
};

/// Head midpoints in stage meters. Virtual-world traces go through
/// undo_scene_init; stage traces are used as they are.
std::vector<Vec3> stage_head_positions(const Trace& trace, const SceneInit& init,
                                       ScaleDirection direction = ScaleDirection::VirtualPerMeter);

/// Throws InvalidArgument for fewer than two frames, zero duration, or a
/// SceneInit whose scene id differs from the trace's.
TraceStats trace_stats(const Trace& trace, const SceneInit& init, const StatsOptions& options = {});

/// Looks the scene up in `registry` (UnknownSceneError if absent).
TraceStats trace_stats(const Trace& trace, const SceneRegistry& registry,
                       const StatsOptions& options = {});

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

/// user id -> site label, e.g. "user101" -> "RU".
using SiteMap = std::map<std::string, std::string>;

/// Parses "user,site" lines. A first line "user,site" is treated as a header;
/// '#' lines and blank lines are ignored. Throws ParseError.
SiteMap parse_site_map(std::string_view text);

struct TraceSummary {
  std::string user_id;
  std::string scene_id;
  std::string site;
  TraceStats stats;
};

/// Means over traces (each trace weighs the same).
struct AggregateRow {
  std::string site;
  std::string scene;  ///< "*" for the per-site rows
  std::size_t n_traces = 0;
  double mean_frames = 0.0;
  double mean_duration_s = 0.0;
  double mean_fps = 0.0;
  double mean_distance_m = 0.0;
};

struct AggregateTable {
  std::vector<AggregateRow> per_scene;  ///< sorted by site, then scene
  std::vector<AggregateRow> per_site;   ///< sorted by site
};

/// Throws InvalidArgument when `summaries` is empty.
AggregateTable aggregate(std::span<const TraceSummary> summaries);

struct AggregateOptions {
  StatsOptions stats;
  ValidationOptions validation;
  SiteMap sites;             ///< users not listed get site "unknown"; empty map puts all in "all"
  unsigned threads = 0;      ///< 0 = hardware concurrency
};

struct AggregateResult {
  std::vector<TraceSummary> traces;   ///< index order
  AggregateTable table;
  std::vector<std::string> warnings;  ///< skipped files and why
};

/// Loads every indexed trace, computes its stats, and aggregates. Work fans
/// out across threads; results are reduced in index order.
/// Throws InvalidArgument for an empty index or when no trace could be loaded,
/// UnknownSceneError for a scene absent from `registry`.
AggregateResult aggregate_stats(const DatasetIndex& index, const SceneRegistry& registry,
                                const AggregateOptions& options = {});

/// Delimiter-separated table, 9 significant digits.
std::string render_aggregate_csv(const AggregateTable& table);
/// Aligned table: frames as integers, fps and distance with two decimals.
std::string render_aggregate_text(const AggregateTable& table);

std::string render_stats_csv(std::span<const TraceSummary> rows);
std::string render_stats_text(std::span<const TraceSummary> rows);

// ---------------------------------------------------------------------------
// Trajectories and gaze
// ---------------------------------------------------------------------------

struct TrajectoryOptions {
  ScaleDirection scale_direction = ScaleDirection::VirtualPerMeter;
  double center_x = 0.0;
  double center_z = 0.0;
  double half_extent_m = 1.5;  ///< 3 m x 3 m play area
};

struct XzPoint {
  double t_ms, x, z;
};

struct HeightPoint {
  double t_ms, y;
};

struct TrajectorySeries {
  std::vector<XzPoint> xz;
  std::vector<HeightPoint> height;
  std::vector<Diagnostic> warnings;  ///< one per frame outside the stage area
};

TrajectorySeries trajectory_export(const Trace& trace, const SceneInit& init,
                                   const TrajectoryOptions& options = {});

struct GazeDivergence {
  std::vector<double> per_frame_deg;  ///< mean of the two eyes
  double mean_deg = 0.0;
  double p95_deg = 0.0;  ///< nearest-rank percentile
};

/// Angle between head-forward and gaze-forward per eye view, averaged per
/// frame. Throws InvalidArgument("trace has no gaze data").
GazeDivergence gaze_divergence(const Trace& trace, ForwardAxis forward = ForwardAxis::MinusZ);

/// Nearest-rank percentile of `values` (0 < p <= 100). Throws on empty input.
double percentile(std::vector<double> values, double p);

/// `value` with `digits` significant digits, locale independent.
std::string format_significant(double value, int digits = 9);
/// `value` with exactly `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

}  // namespace eyenav
