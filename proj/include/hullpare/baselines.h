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

#include <span>
#include <vector>

#include "hullpare/geometry.h"
#include "hullpare/hull.h"
#include "hullpare/simplify.h"

namespace hullpare {

struct DirectionSet {
  std::vector<Vec3> directions;
};

/// Axis directions and the twelve normalized edge diagonals.
DirectionSet canonical_directions_18();

/// Canonical sets of 6 (axes), 14 (axes + corners), 18 (axes + edges) or 26
/// (all three) directions. Throws InvalidConfig for other sizes.
DirectionSet canonical_directions(int k);

/// No direction repeats another (antiparallel pairs are allowed; a k-DOP is
/// built from them).
bool distinct_directions(const DirectionSet& dirs);

/// Tightest halfspace d·x <= max_p d·p per direction.
std::vector<Halfspace> kdop_fit(std::span<const Point3> points, const DirectionSet& dirs);

struct TightnessReport {
  double volume_ratio = 1;
  double area_ratio = 1;
  /// Outer: largest distance from an approximation vertex to the reference.
  /// Inner: largest distance from a reference vertex to the approximation.
  /// Both are exact because the distance to a convex body is convex.
  double hausdorff = 0;
};

/// Euclidean distance from p to the closed triangle (a, b, c).
double point_triangle_distance(const Point3& p, const Point3& a, const Point3& b,
                               const Point3& c);

/// Distance from p to the surface of a closed polyhedron.
double distance_to_surface(const Point3& p, const PolyhedronMesh& mesh);

/// Compares an approximation given by halfspaces with a reference hull.
/// Throws NonContainment when the approximation does not contain (Outer) or
/// is not contained in (Inner) the reference within 1e-9 diagonal, and
/// Empty/Unbounded when the halfspaces do not bound a solid.
TightnessReport tightness(std::span<const Halfspace> halfspaces,
                          const TriangulatedHull& reference,
                          ApproxMode mode = ApproxMode::Outer);
TightnessReport tightness(const SimplifiedHull& simplified, const TriangulatedHull& reference);

}  // namespace hullpare
