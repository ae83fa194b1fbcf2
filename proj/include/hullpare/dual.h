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

#include <vector>

#include "hullpare/geometry.h"
#include "hullpare/halfedge.h"
#include "hullpare/hull.h"

namespace hullpare {

struct DualVertex {
  Vec3 phi;
  int source = -1;
};

/// Plane eta·x + beta = 0 of a dual face, eta pointing away from the origin
/// side when built from a counter-clockwise triangle.
struct DualFacePlane {
  Vec3 eta;
  double beta = 0;
};

/// Polar dual of a halfspace about an interior center:
/// phi = -n / (n·c + b). Throws CenterOnBoundary when c is (numerically) on
/// the plane.
DualVertex to_dual(const Halfspace& h, const Point3& center, int source = -1);

DualFacePlane dual_face_plane(const Point3& a, const Point3& b, const Point3& c);

/// Primal vertex of a dual face: v = c - eta / beta. Throws
/// NearInfinitePrimalVertex when the dual plane passes (nearly) through the
/// origin.
Point3 from_dual(const DualFacePlane& plane, const Point3& center);

/// Convex hull of the dual vertices of a halfspace set. Vertex ids of the
/// mesh are halfspace indices; halfspaces whose dual vertex is interior to the
/// hull do not bound the intersection and start out dead.
struct DualHull {
  HalfedgeHull mesh;
  Point3 center;
  std::vector<Halfspace> halfspaces;
  std::vector<bool> redundant;
};

DualHull build_dual_hull(const FacePlaneSet& planes, const Point3& center);

/// Primal polytope of a dual hull: one primal vertex per dual face (adjacent
/// coplanar dual triangles share one), one polygon per alive dual vertex.
/// face_source, when given, receives the dual vertex id of each polygon.
PolyhedronMesh extract_primal(const HalfedgeHull& dual, const Point3& center,
                              std::vector<int>* face_source = nullptr);

}  // namespace hullpare
