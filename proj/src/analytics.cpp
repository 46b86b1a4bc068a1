#include "eyenav/analytics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <variant>

#include "eyenav/error.hpp"

namespace eyenav {

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

std::string format_significant(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, digits);
  if (ec != std::errc()) throw Error("failed to format number");
  return std::string(buf.data(), ptr);
}

std::string format_fixed(double value, int decimals) {
  std::array<char, 512> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw Error("failed to format number");
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Per-trace statistics
// ---------------------------------------------------------------------------

std::vector<Vec3> stage_head_positions(const Trace& trace, const SceneInit& init,
                                       ScaleDirection direction) {
  std::vector<Vec3> out;
  out.reserve(trace.size());
  for (const Frame& f : trace.frames()) {
    Pose head = head_pose(f);
    if (head.space == CoordinateSpace::VirtualWorld) head = undo_scene_init(head, init, direction);
    out.push_back(head.position);
  }
  return out;
}

TraceStats trace_stats(const Trace& trace, const SceneInit& init, const StatsOptions& options) {
  if (!init.scene_id.empty() && !trace.scene_id().empty() && init.scene_id != trace.scene_id()) {
    throw InvalidArgument("scene mismatch: trace is '" + trace.scene_id() +
                          "' but parameters are for '" + init.scene_id + "'");
  }
  if (trace.size() < 2) throw InvalidArgument("statistics need at least two frames");

  TraceStats stats;
  stats.n_frames = trace.size();
  const double t0 = trace[0].timestamp_ms();
  const double t1 = trace[trace.size() - 1].timestamp_ms();
  stats.duration_s = (t1 - t0) / 1000.0;
  if (!(stats.duration_s > 0.0)) throw InvalidArgument("trace has zero duration");
  stats.fps = static_cast<double>(stats.n_frames - 1) / stats.duration_s;

  const std::vector<Vec3> heads = stage_head_positions(trace, init, options.scale_direction);
  Vec3 anchor = heads.front();
  for (std::size_t i = 1; i < heads.size(); ++i) {
    const double step = distance(heads[i], heads[i - 1]);
    const double dt_s = (trace[i].timestamp_ms() - trace[i - 1].timestamp_ms()) / 1000.0;
    if (dt_s > 0.0) stats.max_speed_mps = std::max(stats.max_speed_mps, step / dt_s);

    if (options.min_displacement_m <= 0.0) {
      stats.distance_m += step;
    } else {
      const double moved = distance(heads[i], anchor);
      if (moved >= options.min_displacement_m) {
        stats.distance_m += moved;
        anchor = heads[i];
      }
    }
  }
  stats.mean_speed_mps = stats.distance_m / stats.duration_s;
  return stats;
}

TraceStats trace_stats(const Trace& trace, const SceneRegistry& registry, const StatsOptions& options) {
  return trace_stats(trace, registry.lookup(trace.scene_id()), options);
}

// ---------------------------------------------------------------------------
// Aggregation
// ---------------------------------------------------------------------------

SiteMap parse_site_map(std::string_view text) {
  SiteMap sites;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError("site map line needs 'user,site'", line_no);
    const std::string user = trim(line.substr(0, comma));
    const std::string site = trim(line.substr(comma + 1));
    if (user.empty() || site.empty()) throw ParseError("site map line needs 'user,site'", line_no);
    if (sites.empty() && user == "user" && site == "site") continue;
    sites[user] = site;
  }
  return sites;
}

namespace {

AggregateRow mean_row(std::string site, std::string scene, std::span<const TraceSummary* const> rows) {
  AggregateRow r;
  r.site = std::move(site);
  r.scene = std::move(scene);
  r.n_traces = rows.size();
  for (const TraceSummary* s : rows) {
    r.mean_frames += static_cast<double>(s->stats.n_frames);
    r.mean_duration_s += s->stats.duration_s;
    r.mean_fps += s->stats.fps;
    r.mean_distance_m += s->stats.distance_m;
  }
  const double n = static_cast<double>(rows.size());
  r.mean_frames /= n;
  r.mean_duration_s /= n;
  r.mean_fps /= n;
  r.mean_distance_m /= n;
  return r;
}

}  // namespace

AggregateTable aggregate(std::span<const TraceSummary> summaries) {
  if (summaries.empty()) throw InvalidArgument("nothing to aggregate");
  std::map<std::pair<std::string, std::string>, std::vector<const TraceSummary*>> by_scene;
  std::map<std::string, std::vector<const TraceSummary*>> by_site;
  for (const TraceSummary& s : summaries) {
    by_scene[{s.site, s.scene_id}].push_back(&s);
    by_site[s.site].push_back(&s);
  }
  AggregateTable table;
  for (const auto& [key, rows] : by_scene) table.per_scene.push_back(mean_row(key.first, key.second, rows));
  for (const auto& [site, rows] : by_site) table.per_site.push_back(mean_row(site, "*", rows));
  return table;
}

AggregateResult aggregate_stats(const DatasetIndex& index, const SceneRegistry& registry,
                                const AggregateOptions& options) {
  if (index.entries.empty()) throw InvalidArgument("dataset index is empty");
  // Resolve scenes up front so an unknown scene fails before any work starts.
  std::vector<const SceneInit*> inits;
  for (const DatasetEntry& e : index.entries) inits.push_back(&registry.lookup(e.scene_id));

  struct Outcome {
    std::optional<TraceSummary> summary;
    std::string warning;
  };
  auto process = [&](std::size_t i) {
    const DatasetEntry& e = index.entries[i];
    Outcome out;
    try {
      const Trace trace = read_trace_file(e.path, options.validation, e.scene_id);
      TraceSummary s;
      s.user_id = e.user_id;
      s.scene_id = e.scene_id;
      if (options.sites.empty()) {
        s.site = "all";
      } else {
        const auto it = options.sites.find(e.user_id);
        s.site = it == options.sites.end() ? "unknown" : it->second;
      }
      s.stats = trace_stats(trace, *inits[i], options.stats);
      out.summary = std::move(s);
    } catch (const Error& err) {
      out.warning = e.path.string() + ": " + err.what() + ", skipped";
    }
    return out;
  };

  const std::size_t n = index.entries.size();
  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));

  std::vector<Outcome> outcomes(n);
  std::vector<std::future<void>> tasks;
  for (unsigned w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) outcomes[i] = process(i);
    }));
  }
  for (auto& t : tasks) t.get();

  AggregateResult result;
  for (Outcome& o : outcomes) {
    if (o.summary) {
      result.traces.push_back(std::move(*o.summary));
    } else {
      result.warnings.push_back(std::move(o.warning));
    }
  }
  if (result.traces.empty()) throw InvalidArgument("no trace in the dataset could be loaded");
  result.table = aggregate(result.traces);
  return result;
}

namespace {

void append_row_csv(std::ostringstream& out, const AggregateRow& r) {
  out << r.site << ',' << r.scene << ',' << r.n_traces << ',' << format_significant(r.mean_frames)
      << ',' << format_significant(r.mean_duration_s) << ',' << format_significant(r.mean_fps) << ','
      << format_significant(r.mean_distance_m) << '\n';
}

std::string pad(const std::string& s, std::size_t width, bool right_align) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return right_align ? fill + s : s + fill;
}

std::string render_aligned(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows,
                           std::size_t left_aligned_columns) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& r : rows) widths[c] = std::max(widths[c], r[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out << "  ";
      out << pad(cells[c], widths[c], c >= left_aligned_columns);
    }
    out << '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out.str();
}

}  // namespace

std::string render_aggregate_csv(const AggregateTable& table) {
  std::ostringstream out;
  out << "site,scene,n_traces,mean_frames,mean_duration_s,mean_fps,mean_distance_m\n";
  for (const AggregateRow& r : table.per_scene) append_row_csv(out, r);
  for (const AggregateRow& r : table.per_site) append_row_csv(out, r);
  return out.str();
}

std::string render_aggregate_text(const AggregateTable& table) {
  std::vector<std::vector<std::string>> rows;
  auto add = [&](const AggregateRow& r) {
    rows.push_back({r.site, r.scene, std::to_string(r.n_traces), format_fixed(r.mean_frames, 0),
                    format_fixed(r.mean_fps, 2), format_fixed(r.mean_distance_m, 2)});
  };
  for (const AggregateRow& r : table.per_scene) add(r);
  for (const AggregateRow& r : table.per_site) add(r);
  return render_aligned({"site", "scene", "traces", "frames", "fps", "distance_m"}, rows, 2);
}

std::string render_stats_csv(std::span<const TraceSummary> rows) {
  std::ostringstream out;
  out << "user,scene,site,n_frames,duration_s,fps,distance_m,mean_speed_mps,max_speed_mps\n";
  for (const TraceSummary& s : rows) {
    out << s.user_id << ',' << s.scene_id << ',' << s.site << ',' << s.stats.n_frames << ','
        << format_significant(s.stats.duration_s) << ',' << format_significant(s.stats.fps) << ','
        << format_significant(s.stats.distance_m) << ',' << format_significant(s.stats.mean_speed_mps)
        << ',' << format_significant(s.stats.max_speed_mps) << '\n';
  }
  return out.str();
}

std::string render_stats_text(std::span<const TraceSummary> rows) {
  std::vector<std::vector<std::string>> cells;
  for (const TraceSummary& s : rows) {
    cells.push_back({s.user_id, s.scene_id, std::to_string(s.stats.n_frames),
                     format_fixed(s.stats.duration_s, 2), format_fixed(s.stats.fps, 2),
                     format_fixed(s.stats.distance_m, 2), format_fixed(s.stats.max_speed_mps, 2)});
  }
  return render_aligned({"user", "scene", "frames", "duration_s", "fps", "distance_m", "max_speed_mps"},
                        cells, 2);
}

// ---------------------------------------------------------------------------
// Trajectories and gaze
// ---------------------------------------------------------------------------

TrajectorySeries trajectory_export(const Trace& trace, const SceneInit& init,
                                   const TrajectoryOptions& options) {
  const std::vector<Vec3> heads = stage_head_positions(trace, init, options.scale_direction);
  TrajectorySeries series;
  series.xz.reserve(heads.size());
  series.height.reserve(heads.size());
  for (std::size_t i = 0; i < heads.size(); ++i) {
    const double t = trace[i].timestamp_ms();
    const Vec3 p = heads[i];
    series.xz.push_back({t, p.x, p.z});
    series.height.push_back({t, p.y});
    if (std::abs(p.x - options.center_x) > options.half_extent_m ||
        std::abs(p.z - options.center_z) > options.half_extent_m) {
      series.warnings.push_back({Severity::Warning, i + 1, "out-of-stage",
                                 "frame " + std::to_string(i) + " at (" + format_significant(p.x) +
                                     ", " + format_significant(p.z) + ") is outside the stage area"});
    }
  }
  return series;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InvalidArgument("percentile of empty series");
  if (!(p > 0.0 && p <= 100.0)) throw InvalidArgument("percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

GazeDivergence gaze_divergence(const Trace& trace, ForwardAxis forward) {
  if (!trace.has_gaze()) throw InvalidArgument("trace has no gaze data");
  const Vec3 fwd = forward_vector(forward);
  constexpr double kDeg = 180.0 / std::numbers::pi;
  auto eye_angle = [&](const EyeView& ev) {
    return angle_between(quat_rotate(ev.eye_pose.orientation, fwd),
                         quat_rotate(ev.gaze_pose->orientation, fwd)) * kDeg;
  };
  GazeDivergence out;
  out.per_frame_deg.reserve(trace.size());
  double sum = 0.0;
  for (const Frame& f : trace.frames()) {
    const double a = 0.5 * (eye_angle(f.left) + eye_angle(f.right));
    out.per_frame_deg.push_back(a);
    sum += a;
  }
  out.mean_deg = sum / static_cast<double>(trace.size());
  out.p95_deg = percentile(out.per_frame_deg, 95.0);
  return out;
}

}  // namespace eyenav
