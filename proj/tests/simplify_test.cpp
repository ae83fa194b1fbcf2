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
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "hullpare/error.h"
#include "hullpare/simplify.h"
#include "test_support.h"

namespace hullpare {
namespace {

double max_violation(std::span<const Point3> pts, std::span<const Halfspace> planes) {
  double worst = -1e300;
  for (const Point3& p : pts) {
    for (const Halfspace& h : planes) worst = std::max(worst, h.distance(p));
  }
  return worst;
}

// A one-ring of valence k on the unit sphere around the north pole. The polar
// angle wobbles so the envelope is far from a fan while the ring stays convex
// as seen from the pole.
std::pair<OneRing, std::vector<Point3>> wobbly_ring(int k) {
  std::mt19937_64 rng(k);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Point3> pos{{0, 0, 1}};
  OneRing ring;
  ring.center = 0;
  for (int i = 0; i < k; ++i) {
    const double theta = 2 * std::numbers::pi * i / k;
    const double alpha = 0.4 + 0.02 * std::sin(3 * theta) + 1e-5 * u(rng);
    pos.push_back({std::sin(alpha) * std::cos(theta), std::sin(alpha) * std::sin(theta), std::cos(alpha)});
    ring.neighbors.push_back(i + 1);
  }
  return {ring, pos};
}

double envelope_volume(const LocalTriangulation& tri, std::span<const Point3> pos, const Point3& apex) {
  double v = 0;
  for (const Triangle& t : tri.triangles) {
    v += testing::det3(pos[t[0]] - apex, pos[t[1]] - apex, pos[t[2]] - apex);
  }
  return v / 6;
}

TEST(Retriangulate, TriangleRing) {
  auto [ring, pos] = wobbly_ring(3);
  const LocalTriangulation tri = retriangulate_one_ring(ring, pos);
  ASSERT_EQ(tri.triangles.size(), 1u);
  EXPECT_EQ(tri.triangles[0], (Triangle{1, 2, 3}));
}

TEST(Retriangulate, FlatSquareUsesLowestIdDiagonal) {
  const std::vector<Point3> pos{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}};
  const OneRing ring{0, {3, 4, 1, 2}, {}};
  const LocalTriangulation tri = retriangulate_one_ring(ring, pos);
  ASSERT_EQ(tri.triangles.size(), 2u);
  std::set<std::pair<int, int>> edges;
  for (const Triangle& t : tri.triangles) {
    for (int e = 0; e < 3; ++e) edges.insert(std::minmax(t[e], t[(e + 1) % 3]));
  }
  EXPECT_TRUE(edges.count({1, 3}));
  EXPECT_TRUE(is_convex_envelope(ring, tri, pos));
}

TEST(Retriangulate, FanFlipAndHullAgreeOnHighValence) {
  auto [ring, pos] = wobbly_ring(120);
  const LocalTriangulation hull = retriangulate_one_ring(ring, pos, RetriangulationMethod::Hull);
  const LocalTriangulation flip = retriangulate_one_ring(ring, pos, RetriangulationMethod::FanFlip);
  const LocalTriangulation automatic = retriangulate_one_ring(ring, pos);
  EXPECT_EQ(hull.triangles.size(), 118u);
  EXPECT_EQ(flip.triangles.size(), 118u);
  EXPECT_TRUE(spans_ring(ring, hull));
  EXPECT_TRUE(is_convex_envelope(ring, hull, pos));
  EXPECT_TRUE(is_convex_envelope(ring, flip, pos));
  const double a = envelope_volume(hull, pos, pos[0]);
  const double b = envelope_volume(flip, pos, pos[0]);
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
  EXPECT_NEAR(envelope_volume(automatic, pos, pos[0]), a, 1e-12 * std::abs(a));
}

TEST(Retriangulate, ConvexOnRandomSphereRings) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const TriangulatedHull hull = convex_hull(testing::sphere_points(500, seed));
    const HalfedgeHull mesh(hull.vertices, hull.triangles);
    for (int v : mesh.alive_vertices()) {
      const OneRing ring = mesh.one_ring(v);
      EXPECT_TRUE(is_convex_envelope(ring, retriangulate_one_ring(ring, mesh.positions()),
                                     mesh.positions()));
    }
  }
}

TEST(InfiniteCost, CubeFacesAreInfinite) {
  const DualHull dual = build_dual_hull(make_plane_set(testing::cube_planes(-0.5, 0.5)), {});
  for (int v = 0; v < 6; ++v) {
    const LocalTriangulation tri = retriangulate_one_ring(dual.mesh.one_ring(v), dual.mesh.positions());
    EXPECT_TRUE(infinite_cost(tri, dual.mesh.positions()));
    EXPECT_EQ(removal_cost(dual.mesh, v, tri, {}, CostMode::Volume), kInfiniteCost);
  }
}

TEST(InfiniteCost, ChamferIsFinite) {
  const DualHull dual = build_dual_hull(make_plane_set(testing::chamfered_cube_planes()), {});
  const LocalTriangulation tri = retriangulate_one_ring(dual.mesh.one_ring(6), dual.mesh.positions());
  EXPECT_FALSE(infinite_cost(tri, dual.mesh.positions()));
}

TEST(RemovalCost, ChamferCornerTetrahedron) {
  const DualHull dual = build_dual_hull(make_plane_set(testing::chamfered_cube_planes()), {});
  const LocalTriangulation tri = retriangulate_one_ring(dual.mesh.one_ring(6), dual.mesh.positions());
  EXPECT_NEAR(removal_cost(dual.mesh, 6, tri, {}, CostMode::Volume), 0.001 / 6, 1e-15);
  // Three right triangles with legs 0.1 replace an equilateral one of side 0.1 sqrt 2.
  const double area = 3 * 0.005 - std::sqrt(3.0) / 4 * 0.02;
  EXPECT_NEAR(removal_cost(dual.mesh, 6, tri, {}, CostMode::Area), area, 1e-14);
}

TEST(RemovalCost, FrustumTopAndSides) {
  const Point3 c{1, 1, 0.5};
  const DualHull dual = build_dual_hull(make_plane_set(testing::frustum_planes()), c);
  for (int v = 0; v < 6; ++v) {
    const LocalTriangulation tri = retriangulate_one_ring(dual.mesh.one_ring(v), dual.mesh.positions());
    const double cost = removal_cost(dual.mesh, v, tri, c, CostMode::Volume);
    if (v == 1) {
      EXPECT_NEAR(cost, 1.0 / 3, 1e-12);
    } else {
      EXPECT_EQ(cost, kInfiniteCost) << "plane " << v;
    }
  }
}

TEST(Simplify, FrustumToPyramid) {
  SimplifyConfig config;
  config.target_faces = 5;
  const SimplifiedHull r = simplify(make_plane_set(testing::frustum_planes()), config);
  EXPECT_EQ(r.status, SimplifyStatus::Complete);
  ASSERT_EQ(r.reached(), 5);
  ASSERT_EQ(r.steps.size(), 1u);
  EXPECT_EQ(r.steps[0].vertex, 1);
  EXPECT_NEAR(r.steps[0].cost, 1.0 / 3, 1e-12);
  EXPECT_NEAR(r.volume, 8.0 / 3, 1e-12);
  EXPECT_NEAR(r.volume_ratio, 8.0 / 7, 1e-12);
  EXPECT_EQ(r.mesh.faces.size(), 5u);
}

TEST(Simplify, CubeCannotReachFour) {
  SimplifyConfig config;
  config.target_faces = 4;
  const SimplifiedHull r = simplify(make_plane_set(testing::cube_planes()), config);
  EXPECT_EQ(r.status, SimplifyStatus::TargetUnreachable);
  EXPECT_EQ(r.reached(), 6);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Simplify, AlreadyAtTarget) {
  SimplifyConfig config;
  config.target_faces = 6;
  const SimplifiedHull r = simplify(make_plane_set(testing::cube_planes()), config);
  EXPECT_EQ(r.status, SimplifyStatus::AlreadyAtTarget);
  EXPECT_EQ(r.reached(), 6);
  EXPECT_NEAR(r.volume_ratio, 1, 1e-12);
}

TEST(Simplify, InvalidConfig) {
  SimplifyConfig config;
  config.target_faces = 3;
  EXPECT_THROW(simplify(make_plane_set(testing::cube_planes()), config), Error);
  config.target_faces = 4;
  config.constrained = {6};
  try {
    simplify(make_plane_set(testing::cube_planes()), config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidConfig);
  }
}

TEST(Simplify, UnboundedAndEmptyInputs) {
  SimplifyConfig config;
  config.target_faces = 4;
  auto open = testing::cube_planes();
  open.pop_back();
  open.push_back({{1, 1, 0}, -5});
  try {
    simplify(make_plane_set(open), config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Unbounded);
  }
  auto empty = testing::cube_planes();
  empty.push_back({{1, 0, 0}, 2});
  try {
    simplify(make_plane_set(empty), config);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Empty);
  }
}

TEST(Simplify, ConstrainedBaseSurvives) {
  SimplifyConfig config;
  config.target_faces = 5;
  config.constrained = {0};
  const SimplifiedHull r = simplify(make_plane_set(testing::frustum_planes()), config);
  EXPECT_EQ(r.reached(), 5);
  EXPECT_NE(std::find(r.source_ids.begin(), r.source_ids.end(), 0), r.source_ids.end());

  config.constrained = {0, 1, 2, 3, 4, 5};
  const SimplifiedHull all = simplify(make_plane_set(testing::frustum_planes()), config);
  EXPECT_EQ(all.status, SimplifyStatus::TargetUnreachable);
  EXPECT_TRUE(all.steps.empty());
}

TEST(Simplify, ConstrainedTopBlocksOnlyFiniteRemoval) {
  SimplifyConfig config;
  config.target_faces = 5;
  config.constrained = {1};
  const SimplifiedHull r = simplify(make_plane_set(testing::frustum_planes()), config);
  EXPECT_EQ(r.status, SimplifyStatus::TargetUnreachable);
  EXPECT_EQ(r.reached(), 6);
}

TEST(Simplify, IcosahedronOutcomes) {
  const auto ico = testing::icosahedron_points();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pts = testing::rotate(ico, testing::random_rotation(seed));
    SimplifyConfig config;
    config.target_faces = 4;
    const SimplifiedHull r = simplify(std::span<const Point3>(pts), config);
    if (r.status == SimplifyStatus::Complete) {
      EXPECT_EQ(r.reached(), 4);
    } else {
      EXPECT_EQ(r.status, SimplifyStatus::TargetUnreachable);
      EXPECT_EQ(r.reached(), 6);
    }
    const double diag = bounding_box_diagonal(pts);
    EXPECT_LE(max_violation(pts, r.halfspaces), 1e-9 * diag);
  }
}

TEST(SimplifyProperties, ContainmentAfterEveryStep) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto pts = testing::blob_cloud(1000, seed);
    const double diag = bounding_box_diagonal(pts);
    SimplifyConfig config;
    Simplifier s(face_planes(convex_hull(pts)), config);
    while (s.num_alive() > config.target_faces && s.step()) {
      ASSERT_LE(max_violation(pts, s.surviving_halfspaces()), 1e-9 * diag);
    }
    EXPECT_EQ(s.num_alive(), config.target_faces);
  }
}

TEST(SimplifyProperties, SelectionAndMonotonicity) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const TriangulatedHull hull = convex_hull(testing::blob_cloud(1000, seed));
    const FacePlaneSet planes = face_planes(hull);
    for (CostMode mode : {CostMode::Volume, CostMode::Area}) {
      SimplifyConfig config;
      config.cost_mode = mode;
      Simplifier s(planes, config);
      double last = mode == CostMode::Volume ? s.current_volume() : s.current_area();
      while (s.num_alive() > config.target_faces && s.step()) {
        const double now = mode == CostMode::Volume ? s.current_volume() : s.current_area();
        EXPECT_GE(now, last);
        EXPECT_GE(s.steps().back().cost, 0);
        last = now;
      }
      const SimplifiedHull r = s.run();
      for (size_t i = 0; i < r.halfspaces.size(); ++i) {
        EXPECT_EQ(r.halfspaces[i], planes.halfspaces[r.source_ids[i]]);
      }
      EXPECT_GE(r.volume_ratio, 1 - 1e-9);
      EXPECT_NEAR(r.volume, s.current_volume(), mode == CostMode::Volume ? 1e-9 * r.volume : 1e300);
    }
  }
}

TEST(SimplifyProperties, OracleEquivalenceAndLocality) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TriangulatedHull hull = convex_hull(testing::uniform_ball(30, seed));
    const FacePlaneSet planes = face_planes(hull);
    ASSERT_LE(planes.halfspaces.size(), 60u);
    SimplifyConfig config;
    config.target_faces = 4;
    config.exact_cost_check = true;
    Simplifier s(planes, config);
    while (s.num_alive() > 4) {
      // Greedy optimality: the next pop is the cheapest fresh cost.
      double best = kInfiniteCost;
      for (int v : s.alive_ids()) best = std::min(best, s.fresh_cost(v));
      if (best == kInfiniteCost) break;
      const OneRing ring = s.mesh().one_ring([&] {
        for (int v : s.alive_ids()) {
          if (s.fresh_cost(v) == best) return v;
        }
        return -1;
      }());
      ASSERT_TRUE(s.step());
      const RemovalStep& step = s.steps().back();
      EXPECT_EQ(step.cost, best);
      EXPECT_EQ(step.vertex, ring.center);
      EXPECT_EQ(step.recomputed, ring.size());
      EXPECT_NEAR(step.cost, step.oracle_cost, 1e-8 * step.oracle_cost);
    }
  }
}

TEST(SimplifyProperties, RotatedInputStaysContained) {
  const auto pts = testing::blob_cloud(1000, 4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto rotated = testing::rotate(pts, testing::random_rotation(seed));
    SimplifyConfig config;
    const SimplifiedHull r = simplify(std::span<const Point3>(rotated), config);
    EXPECT_EQ(r.reached(), 18);
    EXPECT_LE(max_violation(rotated, r.halfspaces), 1e-9 * bounding_box_diagonal(rotated));
  }
}

TEST(SimplifyProperties, HighValenceVerticesAreHandled) {
  // A dense sphere cap plus a single far point makes some dual vertices of
  // very high valence.
  auto pts = testing::sphere_points(3000, 1);
  for (Point3& p : pts) p.z = std::abs(p.z);
  pts.push_back({0, 0, -3});
  SimplifyConfig config;
  const SimplifiedHull r = simplify(std::span<const Point3>(pts), config);
  EXPECT_EQ(r.reached(), 18);
  EXPECT_LE(max_violation(pts, r.halfspaces), 1e-9 * bounding_box_diagonal(pts));
}

TEST(InnerMode, ContainedAndShrinking) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto pts = testing::blob_cloud(1000, seed);
    const TriangulatedHull hull = convex_hull(pts);
    const FacePlaneSet outer = face_planes(hull);
    SimplifyConfig config;
    config.approx_mode = ApproxMode::Inner;
    config.exact_cost_check = seed == 0;
    Simplifier s(hull, config);
    double last = s.current_volume();
    while (s.num_alive() > config.target_faces && s.step()) {
      EXPECT_LE(s.current_volume(), last);
      last = s.current_volume();
      if (config.exact_cost_check) {
        const RemovalStep& st = s.steps().back();
        EXPECT_NEAR(st.cost, st.oracle_cost, 1e-8 * hull.volume());
      }
    }
    const SimplifiedHull r = s.run();
    EXPECT_EQ(r.mesh.vertices.size(), 18u);
    EXPECT_LE(r.volume_ratio, 1 + 1e-12);
    const double diag = bounding_box_diagonal(pts);
    EXPECT_LE(max_violation(r.mesh.vertices, outer.halfspaces), 1e-9 * diag);
    // Every kept vertex is an input hull vertex.
    for (int id : r.source_ids) EXPECT_LT(id, static_cast<int>(hull.vertices.size()));
  }
}

}  // namespace
}  // namespace hullpare
