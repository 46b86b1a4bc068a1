#include "eyenav/io_formats.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

namespace eyenav {

namespace {

constexpr std::array kCanonicalOrder = {
    CsvColumn::ViewIndex, CsvColumn::Fov1,     CsvColumn::Fov2,     CsvColumn::Fov3,
    CsvColumn::Fov4,      CsvColumn::PosX,     CsvColumn::PosY,     CsvColumn::PosZ,
    CsvColumn::QuatX,     CsvColumn::QuatY,    CsvColumn::QuatZ,    CsvColumn::QuatW,
    CsvColumn::GazePosX,  CsvColumn::GazePosY, CsvColumn::GazePosZ, CsvColumn::GazeQX,
    CsvColumn::GazeQY,    CsvColumn::GazeQZ,   CsvColumn::GazeQW,   CsvColumn::Timestamp,
};

bool is_gaze_column(CsvColumn c) {
  const auto i = static_cast<std::size_t>(c);
  return i >= static_cast<std::size_t>(CsvColumn::GazePosX) &&
         i <= static_cast<std::size_t>(CsvColumn::GazeQW);
}

std::size_t index_of(CsvColumn c) { return static_cast<std::size_t>(c); }

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = trim(s.substr(1, s.size() - 2));
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(unquote(line.substr(start)));
      break;
    }
    cells.push_back(unquote(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  // from_chars rejects a leading '+'.
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::string normalize_header(std::string_view cell) {
  std::string key;
  for (char c : cell) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return key;
}

}  // namespace

// ---------------------------------------------------------------------------
// Header matching
// ---------------------------------------------------------------------------

std::optional<CsvColumn> match_column(std::string_view header_cell) {
  static const std::map<std::string, CsvColumn> kKeys = [] {
    std::map<std::string, CsvColumn> keys;
    for (CsvColumn c : kCanonicalOrder) keys[normalize_header(column_name(c))] = c;
    // Long forms used in the column descriptions.
    keys["positionx"] = CsvColumn::PosX;
    keys["positiony"] = CsvColumn::PosY;
    keys["positionz"] = CsvColumn::PosZ;
    keys["quaternionx"] = CsvColumn::QuatX;
    keys["quaterniony"] = CsvColumn::QuatY;
    keys["quaternionz"] = CsvColumn::QuatZ;
    keys["quaternionw"] = CsvColumn::QuatW;
    keys["view"] = CsvColumn::ViewIndex;
    keys["fov1rad"] = CsvColumn::Fov1;
    keys["fov2rad"] = CsvColumn::Fov2;
    keys["fov3rad"] = CsvColumn::Fov3;
    keys["fov4rad"] = CsvColumn::Fov4;
    keys["timestampms"] = CsvColumn::Timestamp;
    return keys;
  }();
  const auto it = kKeys.find(normalize_header(header_cell));
  if (it == kKeys.end()) return std::nullopt;
  return it->second;
}

TraceValidationError::TraceValidationError(ValidationReport report)
    : ParseError(
          [&] {
            for (const Diagnostic& d : report.items) {
              if (d.severity == Severity::Error) return "trace validation failed: " + d.message;
            }
            return std::string("trace validation failed");
          }(),
          0),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

RawTrace read_trace_rows(std::istream& in) {
  RawTrace raw;
  CoordinateSpace space = CoordinateSpace::VirtualWorld;
  std::vector<std::optional<CsvColumn>> header;
  bool have_header = false;
  std::size_t data_row = 0;
  std::string line;

  while (std::getline(in, line)) {
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      if (view.find("space=physical_stage") != std::string_view::npos) {
        space = CoordinateSpace::PhysicalStage;
      }
      continue;
    }

    const std::vector<std::string_view> cells = split_commas(view);
    if (!have_header) {
      std::array<bool, kCsvColumnCount> seen{};
      for (std::string_view cell : cells) {
        const auto column = match_column(cell);
        if (!column) throw ParseError("unknown column '" + std::string(cell) + "'", 0);
        if (seen[index_of(*column)]) {
          throw ParseError("duplicate column '" + std::string(cell) + "'", 0);
        }
        seen[index_of(*column)] = true;
        header.push_back(column);
        raw.column_order.push_back(*column);
      }
      const bool any_gaze = std::any_of(kCanonicalOrder.begin(), kCanonicalOrder.end(), [&](CsvColumn c) {
        return is_gaze_column(c) && seen[index_of(c)];
      });
      for (CsvColumn c : kCanonicalOrder) {
        if (!seen[index_of(c)] && (!is_gaze_column(c) || any_gaze)) {
          throw ParseError("missing column " + std::string(column_name(c)), 0);
        }
      }
      raw.has_gaze = any_gaze;
      have_header = true;
      continue;
    }

    ++data_row;
    if (cells.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(cells.size()),
                       data_row);
    }

    auto rec = std::make_shared<RecordedRow>();
    rec->row = data_row;
    std::array<double, kCsvColumnCount> values{};
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const CsvColumn c = *header[i];
      const auto value = parse_double(cells[i]);
      if (!value) {
        throw ParseError("non-numeric value '" + std::string(cells[i]) + "'", data_row,
                         std::string(column_name(c)));
      }
      values[index_of(c)] = *value;
      rec->text[index_of(c)] = std::string(cells[i]);
    }

    auto v = [&](CsvColumn c) { return values[index_of(c)]; };
    EyeView ev;
    const double view_index = v(CsvColumn::ViewIndex);
    if (view_index == 0.0) {
      ev.eye = Eye::Left;
    } else if (view_index == 1.0) {
      ev.eye = Eye::Right;
    } else {
      throw ParseError("view index must be 0 or 1", data_row, "ViewIndex");
    }
    ev.fov = {v(CsvColumn::Fov1), v(CsvColumn::Fov2), v(CsvColumn::Fov3), v(CsvColumn::Fov4)};
    ev.timestamp_ms = v(CsvColumn::Timestamp);

    rec->head_quat = {v(CsvColumn::QuatX), v(CsvColumn::QuatY), v(CsvColumn::QuatZ),
                      v(CsvColumn::QuatW)};
    try {
      ev.eye_pose = {{v(CsvColumn::PosX), v(CsvColumn::PosY), v(CsvColumn::PosZ)},
                     UnitQuat::normalized(rec->head_quat),
                     space};
    } catch (const GeometryError&) {
      throw ParseError("degenerate quaternion", data_row, "Quat_W");
    }
    if (raw.has_gaze) {
      rec->gaze_quat = Quat{v(CsvColumn::GazeQX), v(CsvColumn::GazeQY), v(CsvColumn::GazeQZ),
                            v(CsvColumn::GazeQW)};
      try {
        ev.gaze_pose = Pose{{v(CsvColumn::GazePosX), v(CsvColumn::GazePosY), v(CsvColumn::GazePosZ)},
                            UnitQuat::normalized(*rec->gaze_quat),
                            space};
      } catch (const GeometryError&) {
        throw ParseError("degenerate quaternion", data_row, "GazeQ_W");
      }
    }
    ev.recorded = std::move(rec);
    raw.rows.push_back(std::move(ev));
  }

  if (!have_header) throw ParseError("missing header row", 0);
  return raw;
}

Trace parse_trace_csv(std::istream& in, std::string user_id, std::string scene_id,
                      const ValidationOptions& options, ValidationReport* report) {
  RawTrace raw = read_trace_rows(in);
  if (raw.rows.empty()) throw ParseError("no frames", 0);

  ValidationReport found = validate_rows(raw.rows, options);
  if (found.find("eye-pairing") != nullptr || (options.strict && !found.ok())) {
    throw TraceValidationError(std::move(found));
  }
  std::vector<Frame> frames = pair_rows(raw.rows);
  if (frames.empty()) throw ParseError("no frames", 0);
  const CoordinateSpace space = frames.front().left.eye_pose.space;
  if (report) *report = std::move(found);
  return Trace(std::move(user_id), std::move(scene_id), space, std::move(frames));
}

Trace parse_trace_csv(std::string_view text, std::string user_id, std::string scene_id,
                      const ValidationOptions& options, ValidationReport* report) {
  std::istringstream in{std::string(text)};
  return parse_trace_csv(in, std::move(user_id), std::move(scene_id), options, report);
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

std::string format_roundtrip(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw Error("failed to format number");
  return std::string(buf.data(), ptr);
}

namespace {

// Quaternion to write for a pose: the recorded raw components while they still
// describe the stored orientation, otherwise the normalized ones.
Quat quat_for_writing(const Pose& pose, const std::optional<Quat>& recorded) {
  if (recorded) {
    try {
      if (UnitQuat::normalized(*recorded) == pose.orientation) return *recorded;
    } catch (const GeometryError&) {
    }
  }
  return pose.orientation.raw();
}

std::array<double, kCsvColumnCount> row_values(const EyeView& ev) {
  std::array<double, kCsvColumnCount> v{};
  auto set = [&](CsvColumn c, double x) { v[index_of(c)] = x; };
  set(CsvColumn::ViewIndex, ev.eye == Eye::Left ? 0.0 : 1.0);
  set(CsvColumn::Fov1, ev.fov.left);
  set(CsvColumn::Fov2, ev.fov.right);
  set(CsvColumn::Fov3, ev.fov.top);
  set(CsvColumn::Fov4, ev.fov.bottom);
  set(CsvColumn::PosX, ev.eye_pose.position.x);
  set(CsvColumn::PosY, ev.eye_pose.position.y);
  set(CsvColumn::PosZ, ev.eye_pose.position.z);
  const Quat q = quat_for_writing(ev.eye_pose,
                                  ev.recorded ? std::optional<Quat>(ev.recorded->head_quat) : std::nullopt);
  set(CsvColumn::QuatX, q.x);
  set(CsvColumn::QuatY, q.y);
  set(CsvColumn::QuatZ, q.z);
  set(CsvColumn::QuatW, q.w);
  if (ev.gaze_pose) {
    set(CsvColumn::GazePosX, ev.gaze_pose->position.x);
    set(CsvColumn::GazePosY, ev.gaze_pose->position.y);
    set(CsvColumn::GazePosZ, ev.gaze_pose->position.z);
    const Quat g = quat_for_writing(*ev.gaze_pose, ev.recorded ? ev.recorded->gaze_quat : std::nullopt);
    set(CsvColumn::GazeQX, g.x);
    set(CsvColumn::GazeQY, g.y);
    set(CsvColumn::GazeQZ, g.z);
    set(CsvColumn::GazeQW, g.w);
  }
  set(CsvColumn::Timestamp, ev.timestamp_ms);
  return v;
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  const bool gaze = trace.has_gaze();
  std::vector<CsvColumn> columns;
  for (CsvColumn c : kCanonicalOrder) {
    if (gaze || !is_gaze_column(c)) columns.push_back(c);
  }

  if (trace.space() == CoordinateSpace::PhysicalStage) out << "# space=physical_stage\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << column_name(columns[i]);
  }
  out << '\n';

  for (const EyeView& ev : trace.rows()) {
    const auto values = row_values(ev);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out << ',';
      const std::size_t k = index_of(columns[i]);
      if (columns[i] == CsvColumn::ViewIndex) {
        out << (ev.eye == Eye::Left ? '0' : '1');
        continue;
      }
      if (ev.recorded && !ev.recorded->text[k].empty()) {
        const auto parsed = parse_double(ev.recorded->text[k]);
        if (parsed && *parsed == values[k]) {
          out << ev.recorded->text[k];
          continue;
        }
      }
      out << format_roundtrip(values[k]);
    }
    out << '\n';
  }
}

std::string write_trace_csv(const Trace& trace) {
  std::ostringstream out;
  write_trace_csv(trace, out);
  return out.str();
}

std::optional<std::pair<std::string, std::string>> parse_trace_filename(std::string_view filename) {
  static const std::regex kPattern(R"(^(user[0-9]+)_(.+)\.csv$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(filename.begin(), filename.end(), m, kPattern)) return std::nullopt;
  return std::make_pair(m[1].str(), m[2].str());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("failed writing " + path.string());
}

Trace read_trace_file(const std::filesystem::path& path, const ValidationOptions& options,
                      std::optional<std::string> scene_id, ValidationReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string user = path.stem().string();
  std::string scene;
  if (auto parts = parse_trace_filename(path.filename().string())) {
    user = parts->first;
    scene = parts->second;
  }
  if (scene_id) scene = *scene_id;
  return parse_trace_csv(in, std::move(user), std::move(scene), options, report);
}

// ---------------------------------------------------------------------------
// Camera-path JSON
// ---------------------------------------------------------------------------

std::string_view to_string(Convention c) {
  return c == Convention::Recorded ? "recorded" : "y_up_flipped";
}

Convention parse_convention(std::string_view text) {
  if (text == "recorded") return Convention::Recorded;
  if (text == "y_up_flipped") return Convention::FlippedYUp;
  throw ParseError("unknown convention '" + std::string(text) + "'");
}

CameraPathDocument csv_to_json(const Trace& trace, bool flip) {
  CameraPathDocument doc;
  doc.scene_id = trace.scene_id();
  doc.user_id = trace.user_id();
  doc.space = trace.space();
  doc.convention = flip ? Convention::FlippedYUp : Convention::Recorded;
  auto to_mat = [flip](const Pose& p) { return pose_to_mat(flip ? handedness_flip(p) : p); };
  for (const EyeView& ev : trace.rows()) {
    CameraRecord rec;
    rec.timestamp_ms = ev.timestamp_ms;
    rec.eye = ev.eye;
    rec.camera_to_world = to_mat(ev.eye_pose);
    rec.fov = ev.fov;
    if (ev.gaze_pose) rec.gaze_to_world = to_mat(*ev.gaze_pose);
    doc.frames.push_back(rec);
  }
  return doc;
}

Trace json_to_csv(const CameraPathDocument& doc) {
  const bool flipped = doc.convention == Convention::FlippedYUp;
  auto to_pose = [&](const Mat4& m, std::size_t record) {
    Pose p;
    try {
      p = mat_to_pose(m, doc.space);
    } catch (const GeometryError& e) {
      throw GeometryError("record " + std::to_string(record) + ": " + e.what());
    }
    if (flipped) p = handedness_flip(p);
    p.orientation = p.orientation.canonical();
    return p;
  };

  std::vector<EyeView> rows;
  rows.reserve(doc.frames.size());
  for (std::size_t i = 0; i < doc.frames.size(); ++i) {
    const CameraRecord& rec = doc.frames[i];
    EyeView ev;
    ev.eye = rec.eye;
    ev.fov = rec.fov;
    ev.timestamp_ms = rec.timestamp_ms;
    ev.eye_pose = to_pose(rec.camera_to_world, i + 1);
    if (rec.gaze_to_world) ev.gaze_pose = to_pose(*rec.gaze_to_world, i + 1);
    rows.push_back(std::move(ev));
  }

  std::vector<Frame> frames;
  std::size_t i = 0;
  while (i < rows.size()) {
    if (rows[i].eye != Eye::Left || i + 1 >= rows.size() || rows[i + 1].eye != Eye::Right) {
      throw ParseError("unpaired eye record", i + 1);
    }
    frames.push_back({rows[i], rows[i + 1]});
    i += 2;
  }
  if (frames.empty()) throw ParseError("no frames", 0);
  return Trace(doc.user_id, doc.scene_id, doc.space, std::move(frames));
}

namespace {

using nlohmann::json;

json mat_json(const Mat4& m) { return json(m.m); }

Mat4 mat_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 16) throw ParseError(where + " must be an array of 16 numbers");
  Mat4 m;
  for (std::size_t i = 0; i < 16; ++i) {
    if (!j[i].is_number()) throw ParseError(where + " must be an array of 16 numbers");
    m.m[i] = j[i].get<double>();
  }
  if (m(3, 0) != 0.0 || m(3, 1) != 0.0 || m(3, 2) != 0.0 || m(3, 3) != 1.0) {
    throw ParseError(where + " last row must be (0, 0, 0, 1)");
  }
  return m;
}

}  // namespace

std::string write_camera_path(const CameraPathDocument& doc) {
  json j;
  j["format"] = kCameraPathFormat;
  j["version"] = kCameraPathVersion;
  j["scene_id"] = doc.scene_id;
  j["user_id"] = doc.user_id;
  j["space"] = to_string(doc.space);
  j["convention"] = to_string(doc.convention);
  if (doc.image_size) j["image_size"] = {doc.image_size->first, doc.image_size->second};
  if (!doc.provenance.empty()) j["provenance"] = doc.provenance;
  json frames = json::array();
  for (const CameraRecord& rec : doc.frames) {
    json f;
    f["timestamp_ms"] = rec.timestamp_ms;
    f["eye"] = static_cast<int>(rec.eye);
    f["camera_to_world"] = mat_json(rec.camera_to_world);
    f["fov"] = {rec.fov.left, rec.fov.right, rec.fov.top, rec.fov.bottom};
    if (rec.gaze_to_world) f["gaze_to_world"] = mat_json(*rec.gaze_to_world);
    if (rec.projection) f["projection"] = mat_json(*rec.projection);
    frames.push_back(std::move(f));
  }
  j["frames"] = std::move(frames);
  return j.dump(2) + "\n";
}

CameraPathDocument read_camera_path(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.value("format", "") != kCameraPathFormat) throw ParseError("not an eyenav camera-path document");
    if (j.value("version", 0) != kCameraPathVersion) throw ParseError("unsupported camera-path version");
    CameraPathDocument doc;
    doc.scene_id = j.value("scene_id", "");
    doc.user_id = j.value("user_id", "");
    try {
      doc.space = parse_space(j.at("space").get<std::string>());
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what());
    }
    doc.convention = parse_convention(j.at("convention").get<std::string>());
    if (j.contains("image_size")) {
      const auto& s = j["image_size"];
      doc.image_size = std::make_pair(s.at(0).get<int>(), s.at(1).get<int>());
    }
    if (j.contains("provenance")) {
      doc.provenance = j["provenance"].get<std::map<std::string, std::string>>();
    }
    const json& frames = j.at("frames");
    if (!frames.is_array()) throw ParseError("frames must be an array");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const json& f = frames[i];
      const std::string where = "frames[" + std::to_string(i) + "]";
      CameraRecord rec;
      rec.timestamp_ms = f.at("timestamp_ms").get<double>();
      const int eye = f.at("eye").get<int>();
      if (eye != 0 && eye != 1) throw ParseError(where + ".eye must be 0 or 1");
      rec.eye = static_cast<Eye>(eye);
      rec.camera_to_world = mat_from_json(f.at("camera_to_world"), where + ".camera_to_world");
      const json& fov = f.at("fov");
      if (!fov.is_array() || fov.size() != 4) throw ParseError(where + ".fov must have 4 angles");
      rec.fov = {fov[0].get<double>(), fov[1].get<double>(), fov[2].get<double>(),
                 fov[3].get<double>()};
      if (f.contains("gaze_to_world") && !f["gaze_to_world"].is_null()) {
        rec.gaze_to_world = mat_from_json(f["gaze_to_world"], where + ".gaze_to_world");
      }
      if (f.contains("projection") && !f["projection"].is_null()) {
        const json& p = f["projection"];
        if (!p.is_array() || p.size() != 16) throw ParseError(where + ".projection must have 16 numbers");
        Mat4 m;
        for (std::size_t k = 0; k < 16; ++k) m.m[k] = p[k].get<double>();
        rec.projection = m;
      }
      doc.frames.push_back(rec);
    }
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed camera-path document: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Dataset directory
// ---------------------------------------------------------------------------

DatasetIndex scan_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw IoError("dataset root is not a readable directory: " + root.string());

  DatasetIndex index;
  auto sorted_children = [&](const fs::path& dir) {
    std::vector<fs::directory_entry> items;
    std::error_code it_ec;
    for (fs::directory_iterator it(dir, it_ec), end; !it_ec && it != end; it.increment(it_ec)) {
      items.push_back(*it);
    }
    if (it_ec) throw IoError("cannot read directory " + dir.string() + ": " + it_ec.message());
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.path() < b.path(); });
    return items;
  };

  for (const fs::directory_entry& top : sorted_children(root)) {
    if (!top.is_directory()) {
      index.warnings.push_back(top.path().string() + ": not inside a scene directory, skipped");
      continue;
    }
    const std::string scene = top.path().filename().string();
    for (const fs::directory_entry& item : sorted_children(top.path())) {
      const std::string name = item.path().filename().string();
      const auto parts = parse_trace_filename(name);
      if (!item.is_regular_file() || !parts || parts->second != scene) {
        index.warnings.push_back(item.path().string() + ": does not match user<digits>_" + scene +
                                 ".csv, skipped");
        continue;
      }
      index.entries.push_back({parts->first, scene, item.path()});
    }
  }

  // Numeric user order without overflow: shorter digit strings first.
  std::stable_sort(index.entries.begin(), index.entries.end(),
                   [](const DatasetEntry& a, const DatasetEntry& b) {
                     if (a.scene_id != b.scene_id) return a.scene_id < b.scene_id;
                     if (a.user_id.size() != b.user_id.size()) return a.user_id.size() < b.user_id.size();
                     return a.user_id < b.user_id;
                   });
  return index;
}

}  // namespace eyenav
