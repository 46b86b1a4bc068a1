#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "eyenav/analytics.hpp"
#include "eyenav/error.hpp"
#include "eyenav/synth.hpp"
#include "test_support.hpp"

using namespace eyenav;
namespace t = eyenav::testing;
namespace fs = std::filesystem;

namespace {

synth::MotionSpec circle(double radius, double revs, double seconds, double fps) {
  synth::MotionSpec spec;
  spec.duration_s = seconds;
  spec.fps = fps;
  spec.path = synth::Circle{radius, revs, 0, 0};
  return spec;
}

// Chord-sum length of a circle sampled at n points over `revs` revolutions.
double chord_length(double radius, double revs, std::size_t n) {
  const double step = 2 * M_PI * revs / static_cast<double>(n - 1);
  return static_cast<double>(n - 1) * 2 * radius * std::sin(step / 2);
}

}  // namespace

TEST(Stats, CircleOracle) {
  const Trace trace = synth::generate_trace(circle(1, 2, 60, 60));
  const TraceStats s = trace_stats(trace, SceneInit::identity());
  EXPECT_EQ(s.n_frames, 3600u);
  EXPECT_NEAR(s.fps, 60.0, 1e-9);
  EXPECT_EQ(format_fixed(s.fps, 2), "60.00");
  EXPECT_NEAR(s.duration_s, 3599.0 / 60.0, 1e-12);
  EXPECT_NEAR(s.distance_m, chord_length(1, 2, 3600), 1e-9);
  EXPECT_LT(std::abs(s.distance_m - 4 * M_PI) / (4 * M_PI), 1e-3);
  EXPECT_NEAR(s.mean_speed_mps, s.distance_m / s.duration_s, 1e-12);
}

TEST(Stats, VirtualTraceMeasuredInMeters) {
  for (const auto& p : t::published_scenes()) {
    SCOPED_TRACE(p.scene);
    auto spec = circle(0.7, 1, 5, 30);
    spec.scene_id = p.scene;
    const SceneInit& init = scene_registry().lookup(p.scene);
    const Trace virt = synth::generate_trace(spec, init);
    ASSERT_EQ(virt.space(), CoordinateSpace::VirtualWorld);
    const TraceStats s = trace_stats(virt, scene_registry());
    EXPECT_NEAR(s.distance_m, chord_length(0.7, 1, 150), 1e-9);
  }
}

TEST(Stats, StationaryIsZero) {
  synth::MotionSpec spec;
  spec.duration_s = 10;
  spec.path = synth::Stationary{0.5, -0.5};
  const TraceStats s = trace_stats(synth::generate_trace(spec), SceneInit::identity());
  EXPECT_EQ(s.distance_m, 0.0);
  EXPECT_EQ(s.max_speed_mps, 0.0);
}

TEST(Stats, MinDisplacementSuppressesJitter) {
  synth::MotionSpec spec;
  spec.duration_s = 10;
  spec.path = synth::Stationary{};
  spec.jitter_m = 0.002;
  spec.seed = 5;
  const Trace trace = synth::generate_trace(spec);
  EXPECT_GT(trace_stats(trace, SceneInit::identity()).distance_m, 1.0);
  StatsOptions opts;
  opts.min_displacement_m = 0.05;
  EXPECT_EQ(trace_stats(trace, SceneInit::identity(), opts).distance_m, 0.0);
}

TEST(Stats, Errors) {
  auto spec = circle(1, 1, 1.0 / 60.0, 60);
  EXPECT_THROW(trace_stats(synth::generate_trace(spec), SceneInit::identity()), InvalidArgument);
  spec = circle(1, 1, 1, 60);
  spec.scene_id = "truck";
  const Trace trace = synth::generate_trace(spec, scene_registry().lookup("truck"));
  EXPECT_THROW(trace_stats(trace, scene_registry().lookup("room")), InvalidArgument);
  spec.scene_id = "garden";
  EXPECT_THROW(trace_stats(synth::generate_trace(spec), scene_registry()), UnknownSceneError);
}

TEST(Aggregate, MeansOfMeans) {
  std::vector<TraceSummary> rows;
  auto add = [&](const char* user, const char* scene, const char* site, std::size_t n, double fps, double d) {
    TraceSummary s{user, scene, site, {}};
    s.stats.n_frames = n;
    s.stats.fps = fps;
    s.stats.distance_m = d;
    rows.push_back(s);
  };
  add("user1", "room", "RU", 100, 50, 10);
  add("user2", "room", "RU", 300, 70, 20);
  add("user1", "truck", "RU", 200, 60, 30);
  add("user9", "room", "NTHU", 50, 40, 5);
  const AggregateTable table = aggregate(rows);
  ASSERT_EQ(table.per_scene.size(), 3u);
  EXPECT_EQ(table.per_scene[0].site, "NTHU");
  EXPECT_EQ(table.per_scene[1].scene, "room");
  EXPECT_EQ(table.per_scene[1].mean_frames, 200.0);
  EXPECT_EQ(table.per_scene[1].mean_fps, 60.0);
  ASSERT_EQ(table.per_site.size(), 2u);
  EXPECT_EQ(table.per_site[1].site, "RU");
  EXPECT_EQ(table.per_site[1].scene, "*");
  EXPECT_EQ(table.per_site[1].n_traces, 3u);
  EXPECT_EQ(table.per_site[1].mean_distance_m, 20.0);
  EXPECT_THROW(aggregate({}), InvalidArgument);

  const std::string text = render_aggregate_text(table);
  EXPECT_NE(text.find("60.00"), std::string::npos);
  const std::string csv = render_aggregate_csv(table);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "site,scene,n_traces,mean_frames,mean_duration_s,mean_fps,mean_distance_m");
  EXPECT_NE(csv.find("RU,*,3,200,0,60,20\n"), std::string::npos);
}

TEST(Aggregate, SiteMapParsing) {
  const SiteMap m = parse_site_map("user,site\n# comment\nuser1, RU\n\nuser40,NTHU\r\n");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("user1"), "RU");
  EXPECT_EQ(m.at("user40"), "NTHU");
  EXPECT_THROW(parse_site_map("user1\n"), ParseError);
}

TEST(Aggregate, DatasetDeterministicAcrossThreads) {
  const fs::path root = fs::temp_directory_path() / "eyenav_agg_test";
  fs::remove_all(root);
  int k = 0;
  for (const char* scene : {"room", "truck", "nyc"}) {
    fs::create_directories(root / scene);
    for (int u = 1; u <= 4; ++u) {
      auto spec = circle(0.5 + 0.1 * u, 1, 3 + u, 50 + 5 * u);
      spec.scene_id = scene;
      spec.user_id = "user" + std::to_string(u);
      spec.jitter_m = 0.001;
      spec.seed = static_cast<std::uint64_t>(++k);
      const Trace tr = synth::generate_trace(spec, scene_registry().lookup(scene));
      std::ofstream(root / scene / (spec.user_id + "_" + scene + ".csv")) << write_trace_csv(tr);
    }
  }
  std::ofstream(root / "room" / "user9_room.csv") << "garbage\n";

  const DatasetIndex index = scan_dataset(root);
  AggregateOptions opts;
  opts.sites = {{"user1", "RU"}, {"user2", "RU"}, {"user3", "NTHU"}};
  opts.threads = 1;
  const AggregateResult one = aggregate_stats(index, scene_registry(), opts);
  opts.threads = 7;
  const AggregateResult many = aggregate_stats(index, scene_registry(), opts);
  EXPECT_EQ(render_aggregate_csv(one.table), render_aggregate_csv(many.table));
  EXPECT_EQ(one.traces.size(), 12u);
  ASSERT_EQ(one.warnings.size(), 1u);
  EXPECT_NE(one.warnings[0].find("user9_room.csv"), std::string::npos);
  ASSERT_EQ(one.table.per_site.size(), 3u);
  EXPECT_EQ(one.table.per_site[2].site, "unknown");

  // Per-trace stats agree with computing them one by one.
  for (const TraceSummary& s : one.traces) {
    const Trace tr = read_trace_file(root / s.scene_id / (s.user_id + "_" + s.scene_id + ".csv"));
    const TraceStats direct = trace_stats(tr, scene_registry());
    EXPECT_EQ(direct.distance_m, s.stats.distance_m);
  }
  fs::remove_all(root);
}

TEST(Trajectory, StageSeriesAndWarnings) {
  auto spec = circle(2.0, 1, 2, 30);
  spec.scene_id = "stump";
  const Trace trace = synth::generate_trace(spec, scene_registry().lookup("stump"));
  const TrajectorySeries s = trajectory_export(trace, scene_registry().lookup("stump"));
  ASSERT_EQ(s.xz.size(), trace.size());
  for (std::size_t i = 0; i < s.xz.size(); ++i) {
    EXPECT_NEAR(std::hypot(s.xz[i].x, s.xz[i].z), 2.0, 1e-9);
    EXPECT_NEAR(s.height[i].y, 1.6, 1e-9);
  }
  EXPECT_FALSE(s.warnings.empty());
  EXPECT_EQ(s.warnings.front().code, "out-of-stage");

  TrajectoryOptions wide;
  wide.half_extent_m = 2.5;
  EXPECT_TRUE(trajectory_export(trace, scene_registry().lookup("stump"), wide).warnings.empty());
}

TEST(Gaze, DivergenceMatchesOffset) {
  auto spec = circle(1, 1, 2, 30);
  spec.gaze_offset_deg = 12.5;
  const GazeDivergence g = gaze_divergence(synth::generate_trace(spec));
  EXPECT_NEAR(g.mean_deg, 12.5, 1e-9);
  EXPECT_NEAR(g.p95_deg, 12.5, 1e-9);
}

TEST(Gaze, Percentile) {
  EXPECT_EQ(percentile({5, 1, 4, 2, 3}, 50), 3);
  EXPECT_EQ(percentile({5, 1, 4, 2, 3}, 100), 5);
  EXPECT_EQ(percentile({7}, 1), 7);
  EXPECT_THROW(percentile({}, 50), InvalidArgument);
}

TEST(Formatting, FixedAndSignificant) {
  EXPECT_EQ(format_significant(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_significant(4 * M_PI), "12.5663706");
  EXPECT_EQ(format_fixed(57.035, 2), "57.03");
  EXPECT_EQ(format_fixed(59.99999999999, 2), "60.00");
}
