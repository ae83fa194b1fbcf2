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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "hullpare/error.h"
#include "hullpare/io.h"
#include "test_support.h"

namespace hullpare {
namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "hullpare_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::IoError;
}

TEST(LoadGeometry, ObjCube) {
  std::string text = "# cube\no cube\n";
  for (const Point3& p : testing::cube_points()) {
    text += "v " + std::to_string(p.x) + " " + std::to_string(p.y) + " " + std::to_string(p.z) + "\n";
  }
  text += "vn 0 0 1\nf 1 2 3\n";
  const LoadedGeometry g = parse_geometry(text, GeometryFormat::Obj);
  EXPECT_EQ(g.points.size(), 8u);
  EXPECT_EQ(g.duplicates, 0);
}

TEST(LoadGeometry, OffWithDuplicates) {
  const std::string text =
      "OFF\n# comment\n6 1 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n1 0 0\n0 0 0\n3 0 1 2\n";
  const LoadedGeometry g = parse_geometry(text, GeometryFormat::Off);
  EXPECT_EQ(g.points.size(), 4u);
  EXPECT_EQ(g.raw_count, 6);
  EXPECT_EQ(g.duplicates, 2);
}

TEST(LoadGeometry, PlyAsciiWithExtraElements) {
  const std::string text =
      "ply\nformat ascii 1.0\ncomment test\nelement vertex 4\nproperty float y\nproperty float x\n"
      "property float z\nproperty uchar red\nelement face 1\nproperty list uchar int vertex_indices\n"
      "end_header\n1 0 0 255\n0 1 0 0\n0 0 1 7\n0 0 0 9\n3 0 1 2\n";
  const LoadedGeometry g = parse_geometry(text, GeometryFormat::Ply);
  ASSERT_EQ(g.points.size(), 4u);
  EXPECT_EQ(g.points[0], (Point3{0, 1, 0}));
  EXPECT_EQ(g.points[1], (Point3{1, 0, 0}));
}

TEST(LoadGeometry, Errors) {
  EXPECT_EQ(code_of([] { parse_geometry("", GeometryFormat::Obj); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_geometry("  \n\n", GeometryFormat::Off); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_geometry("v 0 0 0\nv 1 0 0\nv 0 1 0\n", GeometryFormat::Obj); }),
            ErrorCode::TooFewPoints);
  EXPECT_EQ(code_of([] {
              parse_geometry("ply\nformat binary_little_endian 1.0\nend_header\n", GeometryFormat::Ply);
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_geometry("OFF\n3 0 0\n0 0 0\n", GeometryFormat::Off); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { load_geometry("/nonexistent/file.obj"); }), ErrorCode::IoError);
  EXPECT_EQ(code_of([] { load_geometry("points.xyz"); }), ErrorCode::ParseError);
}

TEST(LoadGeometry, ErrorCarriesLineNumber) {
  try {
    parse_geometry("v 0 0 0\nv 1 0 0\nv 0 1 zero\n", GeometryFormat::Obj);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_geometry("v 0 0 0\nv 1 0 nan\n", GeometryFormat::Obj);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(LoadGeometry, FromFileByExtension) {
  const auto path = temp_dir() / "tet.OFF";
  write_text(path.string(), "OFF 4 0 0\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n");
  EXPECT_EQ(load_geometry(path.string()).points.size(), 4u);
}

TEST(PlaneList, RoundTripIsBitwise) {
  std::mt19937_64 rng(5);
  PlaneListDocument doc;
  doc.center = testing::gaussian_vec(rng);
  for (int i = 0; i < 20; ++i) {
    doc.planes.push_back({testing::gaussian_vec(rng) / 3.0, testing::gaussian_vec(rng).x * 1e-7});
    doc.source_faces.push_back(i * 3);
  }
  doc.input = "model.obj";
  doc.target = 20;
  doc.volume_ratio = 1.0 / 3;
  doc.timing_ms = 12.5;
  doc.warnings = {"a, \"quoted\" warning"};
  const std::string text = to_json(doc);
  const PlaneListDocument back = parse_plane_list(text);
  ASSERT_EQ(back.planes.size(), doc.planes.size());
  for (size_t i = 0; i < doc.planes.size(); ++i) {
    EXPECT_EQ(back.planes[i], doc.planes[i]);
    EXPECT_EQ(back.source_faces[i], doc.source_faces[i]);
  }
  EXPECT_EQ(back.center, doc.center);
  EXPECT_EQ(back.volume_ratio, doc.volume_ratio);
  EXPECT_EQ(back.timing_ms, doc.timing_ms);
  EXPECT_EQ(back.warnings, doc.warnings);
  EXPECT_EQ(to_json(back), text);
}

TEST(PlaneList, RejectsForeignDocuments) {
  EXPECT_EQ(code_of([] { parse_plane_list("{\"schema\": \"other\", \"version\": 1}"); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_plane_list("not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { parse_plane_list("{\"schema\": \"hullpare.planes\", \"version\": 9}"); }),
            ErrorCode::ParseError);
}

TEST(Obj, PolygonAndTriangulatedFaces) {
  PolyhedronMesh mesh;
  mesh.vertices = testing::cube_points();
  mesh.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  const std::string poly = to_obj(mesh);
  EXPECT_NE(poly.find("f 1 3 4 2\n"), std::string::npos);
  const std::string tri = to_obj(mesh, true);
  EXPECT_NE(tri.find("f 1 3 4\nf 1 4 2\n"), std::string::npos);
  const LoadedGeometry back = parse_geometry(poly, GeometryFormat::Obj);
  EXPECT_EQ(back.points, mesh.vertices);
}

TEST(WriteOutputs, FrustumResult) {
  SimplifyConfig config;
  config.target_faces = 5;
  const SimplifiedHull r = simplify(make_plane_set(testing::frustum_planes()), config);
  const PlaneListDocument doc = make_document(r, config, "frustum.obj");
  const auto base = (temp_dir() / "frustum").string();
  write_outputs(doc, r.mesh, base);
  const PlaneListDocument back = read_plane_list(base + ".planes.json");
  EXPECT_EQ(back.planes.size(), 5u);
  EXPECT_EQ(back.status, "complete");
  EXPECT_NEAR(back.volume_ratio, 8.0 / 7, 1e-12);
  EXPECT_FALSE(back.timing_ms.has_value());
  const std::string obj = read_text(base + ".obj");
  int faces = 0;
  for (size_t pos = 0; (pos = obj.find("\nf ", pos)) != std::string::npos; ++pos) ++faces;
  EXPECT_EQ(faces, 5);
  EXPECT_EQ(code_of([&] { write_outputs(doc, r.mesh, "/nonexistent/dir/x"); }), ErrorCode::IoError);
}

TEST(WriteOutputs, Deterministic) {
  const auto pts = testing::uniform_ball(1000, 3);
  SimplifyConfig config;
  config.rng_seed = 42;
  const std::string a = to_json(make_document(simplify(std::span<const Point3>(pts), config), config, "x"));
  const std::string b = to_json(make_document(simplify(std::span<const Point3>(pts), config), config, "x"));
  EXPECT_EQ(a, b);
}

TEST(RunConfig, ParsesDefaultsAndJobs) {
  const RunConfigFile cfg = parse_run_config(R"({
    "version": 1,
    "defaults": {"faces": 12, "cost": "area", "seed": 7},
    "jobs": [
      {"input": "a.obj", "output": "out/a"},
      {"input": "b.ply", "output": "out/b", "faces": 8, "mode": "inner", "keep_faces": [1, 2],
       "oracle_check": true, "triangulate_output": true, "record_timing": true}
    ]
  })");
  ASSERT_EQ(cfg.jobs.size(), 2u);
  EXPECT_EQ(cfg.jobs[0].config.target_faces, 12);
  EXPECT_EQ(cfg.jobs[0].config.cost_mode, CostMode::Area);
  EXPECT_EQ(cfg.jobs[0].config.rng_seed, 7u);
  EXPECT_EQ(cfg.jobs[1].config.target_faces, 8);
  EXPECT_EQ(cfg.jobs[1].config.approx_mode, ApproxMode::Inner);
  EXPECT_EQ(cfg.jobs[1].config.constrained, (std::vector<int>{1, 2}));
  EXPECT_TRUE(cfg.jobs[1].config.exact_cost_check);
  EXPECT_TRUE(cfg.jobs[1].triangulate_output);
  EXPECT_TRUE(cfg.jobs[1].record_timing);
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(code_of([] { parse_run_config(R"({"version": 1, "jobs": [], "extra": 1})"); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] {
              parse_run_config(R"({"version": 1, "jobs": [{"input": "a", "output": "b", "facez": 3}]})");
            }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] {
              parse_run_config(R"({"version": 1, "jobs": [{"input": "a", "output": "b", "faces": 3}]})");
            }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] {
              parse_run_config(R"({"version": 1, "jobs": [{"input": "a", "output": "b", "cost": "mass"}]})");
            }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_run_config(R"({"version": 1, "defaults": {"input": "a"}, "jobs": []})"); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_run_config(R"({"version": 1, "jobs": [{"input": "a"}]})"); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { parse_run_config("{"); }), ErrorCode::ParseError);
}

}  // namespace
}  // namespace hullpare
