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

#include "hullpare/dual.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hullpare/error.h"

namespace hullpare {

DualVertex to_dual(const Halfspace& h, const Point3& center, int source) {
  const double denom = h.eval(center);
  if (std::abs(denom) <= 1e-12 * norm(h.n) * (1 + norm(center))) {
    throw Error(ErrorCode::CenterOnBoundary, "dualization center lies on a halfspace boundary");
  }
  return {-h.n / denom, source};
}

DualFacePlane dual_face_plane(const Point3& a, const Point3& b, const Point3& c) {
  const Vec3 eta = cross(b - a, c - a);
  return {eta, -dot(eta, a)};
}

Point3 from_dual(const DualFacePlane& plane, const Point3& center) {
  if (!(std::abs(plane.beta) > 1e-12 * norm(plane.eta))) {
    throw Error(ErrorCode::NearInfinitePrimalVertex,
                "dual face plane passes through the origin");
  }
  return center - plane.eta / plane.beta;
}

DualHull build_dual_hull(const FacePlaneSet& planes, const Point3& center) {
  std::vector<Point3> phi;
  phi.reserve(planes.halfspaces.size());
  for (size_t i = 0; i < planes.halfspaces.size(); ++i) {
    phi.push_back(to_dual(planes.halfspaces[i], center, static_cast<int>(i)).phi);
  }
  const TriangulatedHull hull = convex_hull(phi);
  std::vector<Triangle> tris;
  tris.reserve(hull.triangles.size());
  for (const Triangle& t : hull.triangles) {
    tris.push_back({hull.source_index[t[0]], hull.source_index[t[1]],
                    hull.source_index[t[2]]});
  }
  DualHull dual;
  dual.mesh = HalfedgeHull(std::move(phi), tris);
  dual.center = center;
  dual.halfspaces = planes.halfspaces;
  dual.redundant.resize(planes.halfspaces.size());
  for (size_t i = 0; i < planes.halfspaces.size(); ++i) {
    dual.redundant[i] = !dual.mesh.is_alive(static_cast<int>(i));
  }
  return dual;
}

namespace {

struct Groups {
  explicit Groups(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::array<double, 4> unit_coefficients(const DualFacePlane& p) {
  const double len = std::sqrt(dot(p.eta, p.eta) + p.beta * p.beta);
  return {p.eta.x / len, p.eta.y / len, p.eta.z / len, p.beta / len};
}

}  // namespace

PolyhedronMesh extract_primal(const HalfedgeHull& dual, const Point3& center,
                              std::vector<int>* face_source) {
  const std::vector<Triangle> tris = dual.triangles();
  std::vector<std::array<double, 4>> coeffs;
  std::vector<Point3> corner;
  coeffs.reserve(tris.size());
  corner.reserve(tris.size());
  for (const Triangle& t : tris) {
    const DualFacePlane plane =
        dual_face_plane(dual.position(t[0]), dual.position(t[1]), dual.position(t[2]));
    coeffs.push_back(unit_coefficients(plane));
    corner.push_back(from_dual(plane, center));
  }

  // Triangles of one dual polygon (a primal vertex where more than three
  // planes meet) are merged across shared edges.
  const PolygonConnectivity around = dual.topological_dual();
  const std::vector<int> alive = dual.alive_vertices();
  Groups groups(tris.size());
  for (const auto& fan : around.faces) {
    for (size_t k = 0; k < fan.size(); ++k) {
      const int f = fan[k], g = fan[(k + 1) % fan.size()];
      double d2 = 0;
      for (int i = 0; i < 4; ++i) d2 += (coeffs[f][i] - coeffs[g][i]) * (coeffs[f][i] - coeffs[g][i]);
      if (std::sqrt(d2) < 1e-9) groups.unite(f, g);
    }
  }

  PolyhedronMesh mesh;
  std::vector<int> vertex_of(tris.size(), -1);
  std::vector<Vec3> sum(tris.size());
  std::vector<int> count(tris.size(), 0);
  for (size_t t = 0; t < tris.size(); ++t) {
    const int r = groups.find(static_cast<int>(t));
    sum[r] += corner[t] - center;
    ++count[r];
  }
  for (size_t t = 0; t < tris.size(); ++t) {
    const int r = groups.find(static_cast<int>(t));
    if (vertex_of[r] < 0) {
      vertex_of[r] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(center + sum[r] / count[r]);
    }
    vertex_of[t] = vertex_of[r];
  }

  if (face_source) face_source->clear();
  for (size_t i = 0; i < around.faces.size(); ++i) {
    std::vector<int> poly;
    for (int f : around.faces[i]) {
      const int v = vertex_of[f];
      if (poly.empty() || poly.back() != v) poly.push_back(v);
    }
    while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    if (poly.size() < 3) continue;
    mesh.faces.push_back(std::move(poly));
    if (face_source) face_source->push_back(alive[i]);
  }
  return mesh;
}

}  // namespace hullpare
