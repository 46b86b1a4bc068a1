#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eyenav/error.hpp"
#include "eyenav/geometry.hpp"
#include "eyenav/trace_model.hpp"

namespace eyenav {

// ---------------------------------------------------------------------------
// Trace CSV
// ---------------------------------------------------------------------------

/// Rows of a trace CSV before frame pairing.
struct RawTrace {
  std::vector<EyeView> rows;
  bool has_gaze = false;
  std::vector<CsvColumn> column_order;  ///< as found in the header
};

/// A trace that failed validation. Carries the full report.
class TraceValidationError : public ParseError {
 public:
  explicit TraceValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

/// Maps a header cell to its column. Matching ignores case and any
/// non-alphanumeric characters, so "Pos_X", "pos x" and "POSX" are the same.
std::optional<CsvColumn> match_column(std::string_view header_cell);

/// Reads header and rows. Throws ParseError for missing/unknown/duplicate
/// columns, bad numbers, eye indices other than 0/1, or a partial gaze block.
/// Lines starting with '#' and blank lines are skipped. LF and CRLF accepted.
RawTrace read_trace_rows(std::istream& in);

/// Reads, validates and pairs a trace.
///  - throws ParseError("no frames") for a header-only file;
///  - throws TraceValidationError on eye-pairing violations, and on any
///    error-level finding when options.strict is set;
///  - otherwise returns the trace and stores the report in `report` if given.
Trace parse_trace_csv(std::istream& in, std::string user_id, std::string scene_id,
                      const ValidationOptions& options = {}, ValidationReport* report = nullptr);

Trace parse_trace_csv(std::string_view text, std::string user_id, std::string scene_id,
                      const ValidationOptions& options = {}, ValidationReport* report = nullptr);

/// Writes the header (canonical column order, gaze columns omitted when the
/// trace has none) and two rows per frame. Values keep their source text when
/// it still matches; otherwise the shortest decimal that round-trips.
void write_trace_csv(const Trace& trace, std::ostream& out);
std::string write_trace_csv(const Trace& trace);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_roundtrip(double value);

/// "user101_truck.csv" -> {"user101", "truck"}.
std::optional<std::pair<std::string, std::string>> parse_trace_filename(std::string_view filename);

/// Reads a trace file; user and scene default to the file name pattern.
/// Throws IoError when the file cannot be opened.
Trace read_trace_file(const std::filesystem::path& path, const ValidationOptions& options = {},
                      std::optional<std::string> scene_id = std::nullopt,
                      ValidationReport* report = nullptr);

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Camera-path JSON
// ---------------------------------------------------------------------------

/// Which axis convention the matrices of a camera-path document use.
enum class Convention {
  Recorded,    ///< same as the trace CSV
  FlippedYUp,  ///< handedness_flip applied to every pose
};

std::string_view to_string(Convention c);
Convention parse_convention(std::string_view text);

struct CameraRecord {
  double timestamp_ms = 0.0;
  Eye eye = Eye::Left;
  Mat4 camera_to_world = Mat4::identity();
  FovAngles fov;
  std::optional<Mat4> gaze_to_world;
  std::optional<Mat4> projection;  ///< only set for replay camera exports
};

struct CameraPathDocument {
  std::string scene_id;
  std::string user_id;
  CoordinateSpace space = CoordinateSpace::VirtualWorld;
  Convention convention = Convention::Recorded;
  std::optional<std::pair<int, int>> image_size;
  std::map<std::string, std::string> provenance;
  std::vector<CameraRecord> frames;
};

inline constexpr std::string_view kCameraPathFormat = "eyenav-camera-path";
inline constexpr int kCameraPathVersion = 1;

/// Per eye view: camera_to_world = translation(position) * rotation, after
/// handedness_flip when `flip` is set. FOV copied through.
CameraPathDocument csv_to_json(const Trace& trace, bool flip);

/// Inverse of csv_to_json, honoring the document's convention marker. Throws
/// GeometryError for non-rigid matrices and ParseError for unpaired records.
Trace json_to_csv(const CameraPathDocument& doc);

std::string write_camera_path(const CameraPathDocument& doc);
/// Throws ParseError for malformed JSON or schema violations.
CameraPathDocument read_camera_path(std::string_view json_text);

// ---------------------------------------------------------------------------
// Dataset directory
// ---------------------------------------------------------------------------

struct DatasetEntry {
  std::string user_id;
  std::string scene_id;
  std::filesystem::path path;
};

struct DatasetIndex {
  std::vector<DatasetEntry> entries;   ///< sorted by scene, then user
  std::vector<std::string> warnings;   ///< skipped files
};

/// One entry per `<root>/<scene>/user<digits>_<scene>.csv`. Anything else is
/// reported as a warning and skipped. Throws IoError when `root` is not a
/// readable directory.
DatasetIndex scan_dataset(const std::filesystem::path& root);

}  // namespace eyenav
