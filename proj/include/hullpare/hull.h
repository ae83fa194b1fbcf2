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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hullpare/geometry.h"

namespace hullpare {

using Triangle = std::array<int, 3>;

/// Closed triangulated convex polyhedron. Triangles are counter-clockwise
/// seen from outside; coplanar regions are triangulated arbitrarily.
struct TriangulatedHull {
  std::vector<Point3> vertices;
  std::vector<Triangle> triangles;
  /// Index of each vertex in the point set the hull was built from.
  std::vector<int> source_index;

  double volume() const;
  double area() const;
  PolyhedronMesh mesh() const;
};

/// Quickhull with every visibility decision made by the exact orient3.
/// Throws DegenerateInput when fewer than four affinely independent points
/// are given.
TriangulatedHull convex_hull(std::span<const Point3> points);

/// For every vertex, the incident triangles in counter-clockwise order seen
/// from outside. Empty for unreferenced vertices.
std::vector<std::vector<int>> incident_fans(std::span<const Triangle> triangles,
                                            int num_vertices);

/// Face planes of a hull. Faces thinner than 1e-8 diagonal^2 are dropped and
/// faces whose dual points (about the vertex centroid, in diagonal units) lie
/// within 1e-14 of each other are merged; with merge_coplanar the merge
/// tolerance widens to 1e-9 so float noise on flat regions is absorbed.
struct FacePlaneSet {
  std::vector<Halfspace> halfspaces;
  /// Source triangles of each halfspace.
  std::vector<std::vector<int>> provenance;
};

FacePlaneSet face_planes(const TriangulatedHull& hull, bool merge_coplanar = true);

/// Halfspace set of an explicit list, with trivial provenance.
FacePlaneSet make_plane_set(std::vector<Halfspace> halfspaces);

enum class IntersectionStatus { Bounded, Empty, Unbounded };

struct IntersectionResult {
  IntersectionStatus status = IntersectionStatus::Empty;
  PolyhedronMesh mesh;
  /// Input halfspace index of each mesh face.
  std::vector<int> face_source;
  Point3 center;
  double radius = 0;
};

/// Polytope of a set of halfspaces built through the polar dual about the
/// Chebyshev center: no plane-plane intersections are constructed. Flat
/// (zero inradius) intersections report Empty.
IntersectionResult halfspace_intersection(std::span<const Halfspace> halfspaces,
                                          std::uint64_t seed = 0);

}  // namespace hullpare
