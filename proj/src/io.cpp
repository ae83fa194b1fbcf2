// Copyright 2026 The Hullpare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hullpare/io.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "hullpare/error.h"
#include "json.hpp"

namespace hullpare {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view token, int line) {
  double v = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size()) {
    parse_fail(line, "expected a number, got '" + std::string(token) + "'");
  }
  if (!std::isfinite(v)) parse_fail(line, "non-finite coordinate");
  return v;
}

long parse_count(std::string_view token, int line) {
  long v = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || end != token.data() + token.size() || v < 0) {
    parse_fail(line, "expected a count, got '" + std::string(token) + "'");
  }
  return v;
}

// Splits text into lines, numbered from 1.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view* line) {
    if (pos_ >= text_.size()) return false;
    size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    *line = text_.substr(pos_, end - pos_);
    if (!line->empty() && line->back() == '\r') line->remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }
  int number() const { return number_; }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  int number_ = 0;
};

Point3 point_from(const std::vector<std::string_view>& tok, size_t first, int line) {
  if (tok.size() < first + 3) parse_fail(line, "vertex needs three coordinates");
  return {parse_double(tok[first], line), parse_double(tok[first + 1], line),
          parse_double(tok[first + 2], line)};
}

std::vector<Point3> parse_obj(std::string_view text) {
  std::vector<Point3> points;
  LineReader reader(text);
  std::string_view line;
  while (reader.next(&line)) {
    const auto tok = split_tokens(line);
    if (!tok.empty() && tok[0] == "v") points.push_back(point_from(tok, 1, reader.number()));
  }
  return points;
}

// Next line that is neither blank nor a comment.
bool next_content(LineReader& reader, std::vector<std::string_view>* tok) {
  std::string_view line;
  while (reader.next(&line)) {
    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    *tok = split_tokens(line);
    if (!tok->empty()) return true;
  }
  return false;
}

std::vector<Point3> parse_off(std::string_view text) {
  LineReader reader(text);
  std::vector<std::string_view> tok;
  if (!next_content(reader, &tok)) parse_fail(reader.number(), "empty file");
  if (tok[0].size() < 3 || tok[0].substr(tok[0].size() - 3) != "OFF") {
    parse_fail(reader.number(), "missing OFF header");
  }
  tok.erase(tok.begin());
  if (tok.empty() && !next_content(reader, &tok)) parse_fail(reader.number(), "missing counts");
  const long count = parse_count(tok[0], reader.number());
  std::vector<Point3> points;
  for (long i = 0; i < count; ++i) {
    if (!next_content(reader, &tok)) parse_fail(reader.number(), "file ends inside vertex list");
    points.push_back(point_from(tok, 0, reader.number()));
  }
  return points;
}

std::vector<Point3> parse_ply(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(&line) || split_tokens(line) != std::vector<std::string_view>{"ply"}) {
    parse_fail(reader.number(), "missing ply header");
  }
  struct Element {
    std::string name;
    long count = 0;
    std::vector<std::string> properties;
  };
  std::vector<Element> elements;
  bool ascii = false;
  bool ended = false;
  while (!ended && reader.next(&line)) {
    const auto tok = split_tokens(line);
    if (tok.empty() || tok[0] == "comment" || tok[0] == "obj_info") continue;
    if (tok[0] == "format") {
      if (tok.size() < 2 || tok[1] != "ascii") parse_fail(reader.number(), "only ASCII PLY is supported");
      ascii = true;
    } else if (tok[0] == "element") {
      if (tok.size() != 3) parse_fail(reader.number(), "malformed element line");
      elements.push_back({std::string(tok[1]), parse_count(tok[2], reader.number()), {}});
    } else if (tok[0] == "property") {
      if (elements.empty() || tok.size() < 3) parse_fail(reader.number(), "malformed property line");
      elements.back().properties.emplace_back(tok.back());
    } else if (tok[0] == "end_header") {
      ended = true;
    } else {
      parse_fail(reader.number(), "unexpected header line");
    }
  }
  if (!ended) parse_fail(reader.number(), "missing end_header");
  if (!ascii) parse_fail(reader.number(), "missing format line");

  std::vector<Point3> points;
  bool seen_vertex = false;
  for (const Element& e : elements) {
    std::array<int, 3> column{-1, -1, -1};
    if (e.name == "vertex") {
      seen_vertex = true;
      for (size_t k = 0; k < e.properties.size(); ++k) {
        if (e.properties[k] == "x") column[0] = static_cast<int>(k);
        if (e.properties[k] == "y") column[1] = static_cast<int>(k);
        if (e.properties[k] == "z") column[2] = static_cast<int>(k);
      }
      if (*std::min_element(column.begin(), column.end()) < 0) {
        parse_fail(reader.number(), "vertex element lacks x, y or z");
      }
    }
    for (long i = 0; i < e.count; ++i) {
      if (!reader.next(&line)) parse_fail(reader.number(), "file ends inside element data");
      if (e.name != "vertex") continue;
      const auto tok = split_tokens(line);
      if (tok.size() < e.properties.size()) parse_fail(reader.number(), "short vertex record");
      points.push_back({parse_double(tok[column[0]], reader.number()),
                        parse_double(tok[column[1]], reader.number()),
                        parse_double(tok[column[2]], reader.number())});
    }
  }
  if (!seen_vertex) parse_fail(reader.number(), "no vertex element");
  return points;
}

std::string lower_extension(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::ParseError, "expected a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::InvalidConfig, where + " must be an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw Error(ErrorCode::InvalidConfig, "unknown key '" + item.key() + "' in " + where);
  }
}

template <typename T>
T typed(const Json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::InvalidConfig, std::string("bad value for '") + key + "'");
  }
}

void apply_job_keys(const Json& obj, RunJob* job) {
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    const Json& v = item.value();
    if (key == "input") {
      job->input = typed<std::string>(v, "input");
    } else if (key == "output") {
      job->output = typed<std::string>(v, "output");
    } else if (key == "faces") {
      job->config.target_faces = typed<int>(v, "faces");
    } else if (key == "cost") {
      const auto s = typed<std::string>(v, "cost");
      if (s != "volume" && s != "area") throw Error(ErrorCode::InvalidConfig, "cost must be volume or area");
      job->config.cost_mode = s == "volume" ? CostMode::Volume : CostMode::Area;
    } else if (key == "mode") {
      const auto s = typed<std::string>(v, "mode");
      if (s != "outer" && s != "inner") throw Error(ErrorCode::InvalidConfig, "mode must be outer or inner");
      job->config.approx_mode = s == "outer" ? ApproxMode::Outer : ApproxMode::Inner;
    } else if (key == "keep_faces") {
      job->config.constrained = typed<std::vector<int>>(v, "keep_faces");
    } else if (key == "seed") {
      job->config.rng_seed = typed<std::uint64_t>(v, "seed");
    } else if (key == "oracle_check") {
      job->config.exact_cost_check = typed<bool>(v, "oracle_check");
    } else if (key == "triangulate_output") {
      job->triangulate_output = typed<bool>(v, "triangulate_output");
    } else if (key == "record_timing") {
      job->record_timing = typed<bool>(v, "record_timing");
    }
  }
  if (job->config.target_faces < 4) throw Error(ErrorCode::InvalidConfig, "faces must be at least 4");
}

}  // namespace

LoadedGeometry parse_geometry(std::string_view text, GeometryFormat format) {
  if (split_tokens(text).empty()) throw Error(ErrorCode::ParseError, "line 1: empty file");
  std::vector<Point3> raw;
  switch (format) {
    case GeometryFormat::Obj:
      raw = parse_obj(text);
      break;
    case GeometryFormat::Off:
      raw = parse_off(text);
      break;
    case GeometryFormat::Ply:
      raw = parse_ply(text);
      break;
  }
  LoadedGeometry out;
  out.raw_count = static_cast<int>(raw.size());
  std::set<std::array<double, 3>> seen;
  for (const Point3& p : raw) {
    if (seen.insert({p.x, p.y, p.z}).second) out.points.push_back(p);
  }
  out.duplicates = out.raw_count - static_cast<int>(out.points.size());
  if (out.points.size() < 4) {
    throw Error(ErrorCode::TooFewPoints,
                "need at least 4 distinct points, found " + std::to_string(out.points.size()));
  }
  return out;
}

LoadedGeometry load_geometry(const std::string& path) {
  const std::string ext = lower_extension(path);
  GeometryFormat format;
  if (ext == "obj") {
    format = GeometryFormat::Obj;
  } else if (ext == "off") {
    format = GeometryFormat::Off;
  } else if (ext == "ply") {
    format = GeometryFormat::Ply;
  } else {
    throw Error(ErrorCode::ParseError, path + ": unsupported extension '" + ext + "'");
  }
  const std::string text = read_text(path);
  try {
    return parse_geometry(text, format);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

const char* to_string(CostMode mode) { return mode == CostMode::Volume ? "volume" : "area"; }

const char* to_string(ApproxMode mode) { return mode == ApproxMode::Outer ? "outer" : "inner"; }

const char* to_string(SimplifyStatus status) {
  switch (status) {
    case SimplifyStatus::Complete:
      return "complete";
    case SimplifyStatus::TargetUnreachable:
      return "target_unreachable";
    case SimplifyStatus::AlreadyAtTarget:
      return "already_at_target";
  }
  return "unknown";
}

PlaneListDocument make_document(const SimplifiedHull& result, const SimplifyConfig& config,
                                const std::string& input) {
  PlaneListDocument doc;
  doc.center = result.center;
  doc.planes = result.halfspaces;
  if (result.mode == ApproxMode::Outer) {
    doc.source_faces = result.source_ids;
  } else {
    doc.source_faces.assign(result.halfspaces.size(), -1);
  }
  doc.input = input;
  doc.target = config.target_faces;
  doc.mode = to_string(config.approx_mode);
  doc.cost = to_string(config.cost_mode);
  doc.status = to_string(result.status);
  doc.reached = result.reached();
  doc.volume_ratio = result.volume_ratio;
  doc.area_ratio = result.area_ratio;
  doc.warnings = result.warnings;
  return doc;
}

std::string to_json(const PlaneListDocument& doc) {
  Json planes = Json::array();
  for (size_t i = 0; i < doc.planes.size(); ++i) {
    Json p;
    p["n"] = vec_json(doc.planes[i].n);
    p["b"] = doc.planes[i].b;
    p["source_face"] = i < doc.source_faces.size() ? doc.source_faces[i] : -1;
    planes.push_back(std::move(p));
  }
  Json meta;
  meta["input"] = doc.input;
  meta["target"] = doc.target;
  meta["mode"] = doc.mode;
  meta["cost"] = doc.cost;
  meta["status"] = doc.status;
  meta["reached"] = doc.reached;
  meta["volume_ratio"] = doc.volume_ratio;
  meta["area_ratio"] = doc.area_ratio;
  if (doc.timing_ms) meta["timing_ms"] = *doc.timing_ms;
  meta["warnings"] = doc.warnings;

  Json root;
  root["schema"] = kPlaneListSchema;
  root["version"] = kPlaneListVersion;
  root["center"] = vec_json(doc.center);
  root["planes"] = std::move(planes);
  root["metadata"] = std::move(meta);
  return root.dump(2) + "\n";
}

PlaneListDocument parse_plane_list(std::string_view text) {
  try {
    const Json root = Json::parse(text);
    if (root.value("schema", "") != kPlaneListSchema) {
      throw Error(ErrorCode::ParseError, "not a hullpare plane list");
    }
    if (root.value("version", 0) != kPlaneListVersion) {
      throw Error(ErrorCode::ParseError, "unsupported plane list version");
    }
    PlaneListDocument doc;
    doc.center = vec_from(root.at("center"));
    for (const Json& p : root.at("planes")) {
      doc.planes.push_back({vec_from(p.at("n")), p.at("b").get<double>()});
      doc.source_faces.push_back(p.value("source_face", -1));
    }
    if (root.contains("metadata")) {
      const Json& m = root["metadata"];
      doc.input = m.value("input", "");
      doc.target = m.value("target", 0);
      doc.mode = m.value("mode", "outer");
      doc.cost = m.value("cost", "volume");
      doc.status = m.value("status", "complete");
      doc.reached = m.value("reached", static_cast<int>(doc.planes.size()));
      doc.volume_ratio = m.value("volume_ratio", 1.0);
      doc.area_ratio = m.value("area_ratio", 1.0);
      if (m.contains("timing_ms")) doc.timing_ms = m["timing_ms"].get<double>();
      doc.warnings = m.value("warnings", std::vector<std::string>{});
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("plane list: ") + e.what());
  }
}

PlaneListDocument read_plane_list(const std::string& path) {
  try {
    return parse_plane_list(read_text(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string to_obj(const PolyhedronMesh& mesh, bool triangulate) {
  std::string out;
  char buf[96];
  for (const Point3& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  for (const auto& face : mesh.faces) {
    if (triangulate) {
      for (size_t k = 1; k + 1 < face.size(); ++k) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", face[0] + 1, face[k] + 1, face[k + 1] + 1);
        out += buf;
      }
      continue;
    }
    out += "f";
    for (int v : face) out += " " + std::to_string(v + 1);
    out += "\n";
  }
  return out;
}

void write_text(const std::string& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error(ErrorCode::IoError, "failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

void write_outputs(const PlaneListDocument& doc, const PolyhedronMesh& mesh,
                   const std::string& base, bool triangulate) {
  write_text(base + ".planes.json", to_json(doc));
  write_text(base + ".obj", to_obj(mesh, triangulate));
}

RunConfigFile parse_run_config(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("run config: ") + e.what());
  }
  reject_unknown(root, {"version", "defaults", "jobs"}, "run config");
  if (root.value("version", 0) != 1) throw Error(ErrorCode::InvalidConfig, "run config version must be 1");
  if (!root.contains("jobs") || !root["jobs"].is_array()) {
    throw Error(ErrorCode::InvalidConfig, "run config needs a jobs array");
  }

  RunJob defaults;
  if (root.contains("defaults")) {
    reject_unknown(root["defaults"],
                   {"faces", "cost", "mode", "keep_faces", "seed", "oracle_check",
                    "triangulate_output", "record_timing"},
                   "defaults");
    apply_job_keys(root["defaults"], &defaults);
  }
  RunConfigFile out;
  for (const Json& j : root["jobs"]) {
    reject_unknown(j,
                   {"input", "output", "faces", "cost", "mode", "keep_faces", "seed",
                    "oracle_check", "triangulate_output", "record_timing"},
                   "job");
    RunJob job = defaults;
    apply_job_keys(j, &job);
    if (job.input.empty() || job.output.empty()) {
      throw Error(ErrorCode::InvalidConfig, "every job needs input and output");
    }
    out.jobs.push_back(std::move(job));
  }
  return out;
}

RunConfigFile read_run_config(const std::string& path) { return parse_run_config(read_text(path)); }

}  // namespace hullpare
