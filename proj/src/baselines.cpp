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

#include "hullpare/baselines.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hullpare/error.h"

namespace hullpare {

namespace {

void append_normalized(std::vector<Vec3>* out, const std::vector<Vec3>& dirs) {
  for (const Vec3& d : dirs) out->push_back(d / norm(d));
}

std::vector<Vec3> axes() { return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}; }

std::vector<Vec3> edges() {
  std::vector<Vec3> out;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      out.push_back({double(s), double(t), 0});
      out.push_back({double(s), 0, double(t)});
      out.push_back({0, double(s), double(t)});
    }
  }
  return out;
}

std::vector<Vec3> corners() {
  std::vector<Vec3> out;
  for (int s : {1, -1}) {
    for (int t : {1, -1}) {
      for (int u : {1, -1}) out.push_back({double(s), double(t), double(u)});
    }
  }
  return out;
}

PolyhedronMesh bounded_mesh(std::span<const Halfspace> halfspaces) {
  IntersectionResult r = halfspace_intersection(halfspaces);
  if (r.status == IntersectionStatus::Empty) {
    throw Error(ErrorCode::Empty, "approximation is empty");
  }
  if (r.status == IntersectionStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "approximation is unbounded");
  }
  return std::move(r.mesh);
}

double max_violation(const std::vector<Point3>& points, std::span<const Halfspace> planes) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Point3& p : points) {
    for (const Halfspace& h : planes) worst = std::max(worst, h.distance(p));
  }
  return worst;
}

}  // namespace

DirectionSet canonical_directions_18() { return canonical_directions(18); }

DirectionSet canonical_directions(int k) {
  DirectionSet set;
  switch (k) {
    case 6:
      append_normalized(&set.directions, axes());
      break;
    case 14:
      append_normalized(&set.directions, axes());
      append_normalized(&set.directions, corners());
      break;
    case 18:
      append_normalized(&set.directions, axes());
      append_normalized(&set.directions, edges());
      break;
    case 26:
      append_normalized(&set.directions, axes());
      append_normalized(&set.directions, edges());
      append_normalized(&set.directions, corners());
      break;
    default:
      throw Error(ErrorCode::InvalidConfig, "k must be 6, 14, 18 or 26");
  }
  return set;
}

bool distinct_directions(const DirectionSet& dirs) {
  const auto& d = dirs.directions;
  for (size_t i = 0; i < d.size(); ++i) {
    for (size_t j = i + 1; j < d.size(); ++j) {
      const double c = dot(d[i], d[j]) / (norm(d[i]) * norm(d[j]));
      if (c >= 1 - 1e-12) return false;
    }
  }
  return true;
}

std::vector<Halfspace> kdop_fit(std::span<const Point3> points, const DirectionSet& dirs) {
  if (points.empty()) throw Error(ErrorCode::TooFewPoints, "k-DOP needs a point");
  std::vector<Halfspace> out;
  for (const Vec3& d : dirs.directions) {
    double top = -std::numeric_limits<double>::infinity();
    for (const Point3& p : points) top = std::max(top, dot(d, p));
    out.push_back({d, -top});
  }
  return out;
}

double point_triangle_distance(const Point3& p, const Point3& a, const Point3& b,
                               const Point3& c) {
  // Region classification after Ericson, Real-Time Collision Detection 5.1.5.
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0 && d2 <= 0) return norm(ap);
  const Vec3 bp = p - b;
  const double d3 = dot(ab, bp), d4 = dot(ac, bp);
  if (d3 >= 0 && d4 <= d3) return norm(bp);
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0 && d1 >= 0 && d3 <= 0) return norm(p - (a + ab * (d1 / (d1 - d3))));
  const Vec3 cp = p - c;
  const double d5 = dot(ab, cp), d6 = dot(ac, cp);
  if (d6 >= 0 && d5 <= d6) return norm(cp);
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0 && d2 >= 0 && d6 <= 0) return norm(p - (a + ac * (d2 / (d2 - d6))));
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0 && d4 - d3 >= 0 && d5 - d6 >= 0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return norm(p - (b + (c - b) * w));
  }
  const double denom = 1 / (va + vb + vc);
  return norm(p - (a + ab * (vb * denom) + ac * (vc * denom)));
}

double distance_to_surface(const Point3& p, const PolyhedronMesh& mesh) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& face : mesh.faces) {
    const Point3& a = mesh.vertices[face[0]];
    for (size_t k = 1; k + 1 < face.size(); ++k) {
      best = std::min(best, point_triangle_distance(p, a, mesh.vertices[face[k]],
                                                    mesh.vertices[face[k + 1]]));
    }
  }
  return best;
}

TightnessReport tightness(std::span<const Halfspace> halfspaces,
                          const TriangulatedHull& reference, ApproxMode mode) {
  const PolyhedronMesh approx = bounded_mesh(halfspaces);
  const PolyhedronMesh ref = reference.mesh();
  const double tol = 1e-9 * bounding_box_diagonal(reference.vertices);

  TightnessReport report;
  report.volume_ratio = approx.volume() / ref.volume();
  report.area_ratio = approx.area() / ref.area();
  if (mode == ApproxMode::Outer) {
    if (max_violation(reference.vertices, halfspaces) > tol) {
      throw Error(ErrorCode::NonContainment, "approximation does not contain the reference hull");
    }
    for (const Point3& v : approx.vertices) {
      report.hausdorff = std::max(report.hausdorff, distance_to_surface(v, ref));
    }
  } else {
    const FacePlaneSet ref_planes = face_planes(reference, false);
    if (max_violation(approx.vertices, ref_planes.halfspaces) > tol) {
      throw Error(ErrorCode::NonContainment, "approximation is not inside the reference hull");
    }
    for (const Point3& v : reference.vertices) {
      report.hausdorff = std::max(report.hausdorff, distance_to_surface(v, approx));
    }
  }
  return report;
}

TightnessReport tightness(const SimplifiedHull& simplified, const TriangulatedHull& reference) {
  return tightness(simplified.halfspaces, reference, simplified.mode);
}

}  // namespace hullpare
