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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hullpare/geometry.h"
#include "hullpare/simplify.h"

namespace hullpare {

enum class GeometryFormat { Obj, Off, Ply };

struct LoadedGeometry {
  std::vector<Point3> points;
  /// Vertex records in the file before exact duplicates were dropped.
  int raw_count = 0;
  int duplicates = 0;
};

/// Vertices of an ASCII OBJ, OFF or PLY file, chosen by extension; faces are
/// ignored. Throws IoError, ParseError (message carries the line number) or
/// TooFewPoints when fewer than four distinct points remain.
LoadedGeometry load_geometry(const std::string& path);
LoadedGeometry parse_geometry(std::string_view text, GeometryFormat format);

constexpr const char* kPlaneListSchema = "hullpare.planes";
constexpr int kPlaneListVersion = 1;

/// Serialized halfspace representation: planes n·x + b <= 0.
struct PlaneListDocument {
  Point3 center;
  std::vector<Halfspace> planes;
  /// Input face (outer) or hull vertex (inner) each plane came from; -1 when
  /// unknown.
  std::vector<int> source_faces;

  std::string input;
  int target = 0;
  std::string mode = "outer";
  std::string cost = "volume";
  std::string status = "complete";
  int reached = 0;
  double volume_ratio = 1;
  double area_ratio = 1;
  std::optional<double> timing_ms;
  std::vector<std::string> warnings;
};

PlaneListDocument make_document(const SimplifiedHull& result, const SimplifyConfig& config,
                                const std::string& input);
/// Deterministic JSON text. Doubles round-trip exactly.
std::string to_json(const PlaneListDocument& doc);
PlaneListDocument parse_plane_list(std::string_view text);
PlaneListDocument read_plane_list(const std::string& path);

/// OBJ text with one polygon per face, or fans when triangulate is set.
std::string to_obj(const PolyhedronMesh& mesh, bool triangulate = false);

void write_text(const std::string& path, std::string_view text);
std::string read_text(const std::string& path);

/// Writes <base>.planes.json and <base>.obj.
void write_outputs(const PlaneListDocument& doc, const PolyhedronMesh& mesh,
                   const std::string& base, bool triangulate = false);

const char* to_string(CostMode mode);
const char* to_string(ApproxMode mode);
const char* to_string(SimplifyStatus status);

/// One simplification job of a run configuration.
struct RunJob {
  std::string input;
  std::string output;
  SimplifyConfig config;
  bool triangulate_output = false;
  bool record_timing = false;
};

/// Declarative batch run: {"version": 1, "defaults": {...}, "jobs": [...]}.
/// Job keys: input, output, faces, cost, mode, keep_faces, seed,
/// oracle_check, triangulate_output, record_timing. Defaults accept the same
/// keys except input and output. Unknown keys raise InvalidConfig.
struct RunConfigFile {
  std::vector<RunJob> jobs;
};

RunConfigFile parse_run_config(std::string_view text);
RunConfigFile read_run_config(const std::string& path);

}  // namespace hullpare
