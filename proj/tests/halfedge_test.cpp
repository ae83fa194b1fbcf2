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

#include <algorithm>
#include <random>
#include <set>

#include "hullpare/error.h"
#include "hullpare/halfedge.h"
#include "hullpare/hull.h"
#include "hullpare/simplify.h"
#include "test_support.h"

namespace hullpare {
namespace {

HalfedgeHull mesh_of(const std::vector<Point3>& pts) {
  const TriangulatedHull hull = convex_hull(pts);
  return HalfedgeHull(hull.vertices, hull.triangles);
}

std::vector<Point3> tetrahedron() { return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}; }

std::vector<Point3> octahedron() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

int index_of(const HalfedgeHull& mesh, const Point3& p) {
  for (int v : mesh.alive_vertices()) {
    if (mesh.position(v) == p) return v;
  }
  return -1;
}

TEST(OneRing, Valences) {
  for (const auto& [pts, valence] :
       std::vector<std::pair<std::vector<Point3>, int>>{
           {tetrahedron(), 3}, {octahedron(), 4}, {testing::icosahedron_points(), 5}}) {
    const HalfedgeHull mesh = mesh_of(pts);
    for (int v : mesh.alive_vertices()) {
      const OneRing ring = mesh.one_ring(v);
      EXPECT_EQ(ring.size(), valence);
      EXPECT_EQ(ring.faces.size(), static_cast<size_t>(valence));
    }
  }
}

TEST(OneRing, NeighborsCounterClockwiseFromOutside) {
  const HalfedgeHull mesh = mesh_of(octahedron());
  const int apex = index_of(mesh, {0, 0, 1});
  const OneRing ring = mesh.one_ring(apex);
  for (int k = 0; k < ring.size(); ++k) {
    const Point3& a = mesh.position(ring.neighbors[k]);
    const Point3& b = mesh.position(ring.neighbors[(k + 1) % ring.size()]);
    EXPECT_GT(cross(a, b).z, 0);
  }
}

TEST(RemoveVertex, OctahedronApex) {
  HalfedgeHull mesh = mesh_of(octahedron());
  const int apex = index_of(mesh, {0, 0, 1});
  const OneRing ring = mesh.one_ring(apex);
  const auto& n = ring.neighbors;
  const LocalTriangulation tri{{Triangle{n[0], n[1], n[2]}, Triangle{n[0], n[2], n[3]}}};
  mesh.remove_vertex(apex, tri);
  EXPECT_EQ(mesh.num_alive_vertices(), 5);
  EXPECT_EQ(mesh.num_alive_faces(), 6);
  EXPECT_EQ(mesh.num_alive_edges(), 9);
  EXPECT_FALSE(mesh.is_alive(apex));
  mesh.validate();
}

TEST(RemoveVertex, TetrahedronIsMinimal) {
  HalfedgeHull mesh = mesh_of(tetrahedron());
  const OneRing ring = mesh.one_ring(0);
  const LocalTriangulation tri{{Triangle{ring.neighbors[0], ring.neighbors[1], ring.neighbors[2]}}};
  try {
    mesh.remove_vertex(0, tri);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MinimalComplex);
  }
  EXPECT_EQ(mesh.num_alive_vertices(), 4);
  mesh.validate();
}

TEST(RemoveVertex, ValenceThreeEulerBookkeeping) {
  HalfedgeHull mesh = mesh_of(testing::cube_points());
  // Pick a valence-3 corner of the triangulated cube.
  int v = -1;
  for (int c : mesh.alive_vertices()) {
    if (mesh.one_ring(c).size() == 3) v = c;
  }
  ASSERT_GE(v, 0);
  const int f = mesh.num_alive_faces(), e = mesh.num_alive_edges(), n = mesh.num_alive_vertices();
  const OneRing ring = mesh.one_ring(v);
  mesh.remove_vertex(v, {{Triangle{ring.neighbors[0], ring.neighbors[1], ring.neighbors[2]}}});
  EXPECT_EQ(mesh.num_alive_faces(), f - 2);
  EXPECT_EQ(mesh.num_alive_edges(), e - 3);
  EXPECT_EQ(mesh.num_alive_vertices(), n - 1);
  mesh.validate();
}

TEST(RemoveVertex, RejectsBadTriangulations) {
  HalfedgeHull mesh = mesh_of(octahedron());
  const int apex = index_of(mesh, {0, 0, 1});
  const OneRing ring = mesh.one_ring(apex);
  const auto& n = ring.neighbors;
  // Reversed orientation does not span the ring.
  const LocalTriangulation reversed{{Triangle{n[0], n[2], n[1]}, Triangle{n[0], n[3], n[2]}}};
  try {
    mesh.remove_vertex(apex, reversed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryMismatch);
  }
  mesh.validate();
  EXPECT_TRUE(mesh.is_alive(apex));

  mesh.remove_vertex(apex, {{Triangle{n[0], n[1], n[2]}, Triangle{n[0], n[2], n[3]}}});
  try {
    mesh.one_ring(apex);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DeadVertex);
  }
}

TEST(RemoveVertex, RejectsExistingDiagonal) {
  // After removing the top apex with diagonal n0-n2, removing the bottom
  // apex with the same diagonal would duplicate the edge.
  HalfedgeHull mesh = mesh_of(octahedron());
  const int top = index_of(mesh, {0, 0, 1});
  const int bottom = index_of(mesh, {0, 0, -1});
  const OneRing ring = mesh.one_ring(top);
  const auto& n = ring.neighbors;
  mesh.remove_vertex(top, {{Triangle{n[0], n[1], n[2]}, Triangle{n[0], n[2], n[3]}}});
  const OneRing low = mesh.one_ring(bottom);
  const auto& m = low.neighbors;
  const int a = static_cast<int>(std::find(m.begin(), m.end(), n[0]) - m.begin());
  const LocalTriangulation same{{Triangle{m[a], m[(a + 1) % 4], m[(a + 2) % 4]},
                                 Triangle{m[a], m[(a + 2) % 4], m[(a + 3) % 4]}}};
  try {
    mesh.remove_vertex(bottom, same);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonManifold);
  }
  mesh.validate();
}

TEST(TopologicalDual, Examples) {
  const HalfedgeHull cube = mesh_of(testing::cube_points());
  const PolygonConnectivity cube_dual = cube.topological_dual();
  EXPECT_EQ(cube_dual.num_vertices, 12);
  EXPECT_EQ(cube_dual.faces.size(), 8u);

  const PolygonConnectivity tet_dual = mesh_of(tetrahedron()).topological_dual();
  EXPECT_EQ(tet_dual.num_vertices, 4);
  ASSERT_EQ(tet_dual.faces.size(), 4u);
  for (const auto& f : tet_dual.faces) EXPECT_EQ(f.size(), 3u);

  const PolygonConnectivity oct_dual = mesh_of(octahedron()).topological_dual();
  EXPECT_EQ(oct_dual.num_vertices, 8);
  ASSERT_EQ(oct_dual.faces.size(), 6u);
  for (const auto& f : oct_dual.faces) EXPECT_EQ(f.size(), 4u);
}

TEST(DualConnectivity, DualOfDualIsOriginal) {
  const HalfedgeHull mesh = mesh_of(testing::icosahedron_points());
  const PolygonConnectivity primal = mesh.connectivity();
  const PolygonConnectivity twice = dual_connectivity(dual_connectivity(primal));
  ASSERT_EQ(twice.faces.size(), primal.faces.size());
  EXPECT_EQ(twice.num_vertices, primal.num_vertices);
  // Same faces up to rotation of each polygon.
  std::set<std::vector<int>> a, b;
  auto canonical = [](std::vector<int> f) {
    std::rotate(f.begin(), std::min_element(f.begin(), f.end()), f.end());
    return f;
  };
  for (const auto& f : primal.faces) a.insert(canonical(f));
  for (const auto& f : twice.faces) b.insert(canonical(f));
  EXPECT_EQ(a, b);
}

TEST(RemoveVertex, RandomSequencesKeepInvariants) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    HalfedgeHull mesh = mesh_of(testing::sphere_points(300, seed));
    std::mt19937_64 rng(seed);
    while (mesh.num_alive_vertices() > 4) {
      auto alive = mesh.alive_vertices();
      const int v = alive[rng() % alive.size()];
      const OneRing ring = mesh.one_ring(v);
      const LocalTriangulation tri = retriangulate_one_ring(ring, mesh.positions());
      try {
        mesh.remove_vertex(v, tri);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonManifold);
        continue;
      }
      if (mesh.num_alive_vertices() % 37 == 0) {
        mesh.validate();
        const int f = mesh.num_alive_faces(), e = mesh.num_alive_edges();
        EXPECT_EQ(mesh.num_alive_vertices() - e + f, 2);
      }
    }
    mesh.validate();
    EXPECT_EQ(mesh.num_alive_faces(), 4);
  }
}

TEST(RestoreVertex, UndoesRemoval) {
  HalfedgeHull mesh = mesh_of(testing::sphere_points(200, 5));
  const std::vector<Triangle> before = mesh.triangles();
  std::set<std::array<int, 3>> original;
  auto canonical = [](Triangle t) {
    std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    return t;
  };
  for (const Triangle& t : before) original.insert(canonical(t));
  for (int v : {0, 17, 101}) {
    const OneRing ring = mesh.one_ring(v);
    const LocalTriangulation tri = retriangulate_one_ring(ring, mesh.positions());
    mesh.remove_vertex(v, tri);
    mesh.validate();
    mesh.restore_vertex(v, ring, tri);
    mesh.validate();
  }
  std::set<std::array<int, 3>> after;
  for (const Triangle& t : mesh.triangles()) after.insert(canonical(t));
  EXPECT_EQ(original, after);
}

TEST(Compact, KeepsVertexIds) {
  HalfedgeHull mesh = mesh_of(testing::sphere_points(100, 2));
  for (int v : {3, 50, 77}) {
    mesh.remove_vertex(v, retriangulate_one_ring(mesh.one_ring(v), mesh.positions()));
  }
  const auto alive = mesh.alive_vertices();
  const auto tris = mesh.triangles();
  mesh.compact();
  mesh.validate();
  EXPECT_EQ(mesh.alive_vertices(), alive);
  EXPECT_EQ(mesh.triangles().size(), tris.size());
  EXPECT_FALSE(mesh.is_alive(50));
}

}  // namespace
}  // namespace hullpare
