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

#include "hullpare/hull.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "hullpare/error.h"
#include "hullpare/lp.h"

namespace hullpare {

namespace {

struct Face {
  Triangle v;
  std::array<int, 3> adj;  // adj[k] lies across edge v[k] -> v[k+1]
  Vec3 normal;
  double offset = 0;
  std::vector<int> outside;
  int farthest = -1;
  double farthest_distance = 0;
  int visited = -1;
  bool alive = true;
};

class Quickhull {
 public:
  explicit Quickhull(std::span<const Point3> points) : pts_(points) {}

  TriangulatedHull run() {
    for (const Point3& p : pts_) {
      if (!is_finite(p)) {
        throw Error(ErrorCode::DegenerateInput, "non-finite input point");
      }
    }
    if (pts_.size() < 4) {
      throw Error(ErrorCode::DegenerateInput, "convex hull needs at least 4 points");
    }
    initial_simplex();
    while (!pending_.empty()) {
      const int f = pending_.back();
      pending_.pop_back();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      add_point(f);
    }
    return collect();
  }

 private:
  int new_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.adj = {-1, -1, -1};
    f.normal = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
    f.offset = -dot(f.normal, pts_[a]);
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
  }

  bool above(const Face& f, int p) const {
    return orient3(pts_[f.v[0]], pts_[f.v[1]], pts_[f.v[2]], pts_[p]) ==
           Sign::Positive;
  }

  void assign(int f, int p) {
    Face& face = faces_[f];
    const double d = dot(face.normal, pts_[p]) + face.offset;
    if (face.outside.empty() || d > face.farthest_distance) {
      face.farthest = p;
      face.farthest_distance = d;
    }
    if (face.outside.empty()) pending_.push_back(f);
    face.outside.push_back(p);
  }

  void initial_simplex() {
    const int n = static_cast<int>(pts_.size());
    std::array<int, 6> extremes{0, 0, 0, 0, 0, 0};
    for (int i = 1; i < n; ++i) {
      for (int k = 0; k < 3; ++k) {
        if (pts_[i][k] < pts_[extremes[2 * k]][k]) extremes[2 * k] = i;
        if (pts_[i][k] > pts_[extremes[2 * k + 1]][k]) extremes[2 * k + 1] = i;
      }
    }
    int i0 = 0, i1 = 0;
    double best = -1;
    for (int a : extremes) {
      for (int b : extremes) {
        const Vec3 d = pts_[a] - pts_[b];
        if (dot(d, d) > best) {
          best = dot(d, d);
          i0 = a;
          i1 = b;
        }
      }
    }
    if (best <= 0) throw Error(ErrorCode::DegenerateInput, "all points coincide");

    int i2 = -1;
    best = 0;
    const Vec3 axis = pts_[i1] - pts_[i0];
    for (int i = 0; i < n; ++i) {
      const Vec3 c = cross(pts_[i] - pts_[i0], axis);
      if (dot(c, c) > best) {
        best = dot(c, c);
        i2 = i;
      }
    }
    if (i2 < 0) throw Error(ErrorCode::DegenerateInput, "points are collinear");

    const Vec3 normal = cross(pts_[i1] - pts_[i0], pts_[i2] - pts_[i0]);
    int i3 = -1;
    best = -1;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(dot(normal, pts_[i] - pts_[i0]));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (orient3(pts_[i0], pts_[i1], pts_[i2], pts_[i3]) == Sign::Zero) {
      i3 = -1;
      for (int i = 0; i < n && i3 < 0; ++i) {
        if (orient3(pts_[i0], pts_[i1], pts_[i2], pts_[i]) != Sign::Zero) i3 = i;
      }
      if (i3 < 0) throw Error(ErrorCode::DegenerateInput, "points are coplanar");
    }
    if (orient3(pts_[i0], pts_[i1], pts_[i2], pts_[i3]) == Sign::Positive) {
      std::swap(i1, i2);
    }

    const int f0 = new_face(i0, i1, i2);
    const int f1 = new_face(i0, i3, i1);
    const int f2 = new_face(i1, i3, i2);
    const int f3 = new_face(i2, i3, i0);
    const std::array<int, 4> initial{f0, f1, f2, f3};
    for (int f : initial) {
      for (int k = 0; k < 3; ++k) {
        const int a = faces_[f].v[k], b = faces_[f].v[(k + 1) % 3];
        for (int g : initial) {
          for (int m = 0; m < 3; ++m) {
            if (faces_[g].v[m] == b && faces_[g].v[(m + 1) % 3] == a) {
              faces_[f].adj[k] = g;
            }
          }
        }
      }
    }

    for (int i = 0; i < n; ++i) {
      if (i == i0 || i == i1 || i == i2 || i == i3) continue;
      for (int f : initial) {
        if (above(faces_[f], i)) {
          assign(f, i);
          break;
        }
      }
    }
  }

  struct HorizonEdge {
    int a, b, neighbor;
  };

  void add_point(int start) {
    const int eye = faces_[start].farthest;
    ++stamp_;

    // Faces strictly visible from the eye form a connected patch; its
    // boundary is the horizon.
    visible_.clear();
    horizon_.clear();
    std::vector<int> stack{start};
    faces_[start].visited = stamp_;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      visible_.push_back(f);
      for (int k = 0; k < 3; ++k) {
        const int g = faces_[f].adj[k];
        if (faces_[g].visited == stamp_) continue;
        if (above(faces_[g], eye)) {
          faces_[g].visited = stamp_;
          stack.push_back(g);
        } else {
          horizon_.push_back({faces_[f].v[k], faces_[f].v[(k + 1) % 3], g});
        }
      }
    }
    // A face reached through two visible neighbours is pushed once, but a
    // non-visible face may be recorded on several horizon edges; both fine.

    if (start_of_.size() < pts_.size()) {
      start_of_.assign(pts_.size(), -1);
      end_of_.assign(pts_.size(), -1);
    }
    created_.clear();
    for (const HorizonEdge& e : horizon_) {
      const int nf = new_face(e.a, e.b, eye);
      created_.push_back(nf);
      faces_[nf].adj[0] = e.neighbor;
      Face& g = faces_[e.neighbor];
      for (int m = 0; m < 3; ++m) {
        if (g.v[m] == e.b && g.v[(m + 1) % 3] == e.a) g.adj[m] = nf;
      }
      start_of_[e.a] = nf;
      end_of_[e.b] = nf;
    }
    for (int nf : created_) {
      Face& f = faces_[nf];
      f.adj[1] = start_of_[f.v[1]];
      f.adj[2] = end_of_[f.v[0]];
    }
    for (int nf : created_) {
      start_of_[faces_[nf].v[0]] = -1;
      end_of_[faces_[nf].v[1]] = -1;
    }

    for (int f : visible_) {
      faces_[f].alive = false;
      std::vector<int> outside = std::move(faces_[f].outside);
      faces_[f].outside.clear();
      for (int p : outside) {
        if (p == eye) continue;
        for (int nf : created_) {
          if (above(faces_[nf], p)) {
            assign(nf, p);
            break;
          }
        }
      }
    }
  }

  TriangulatedHull collect() const {
    std::vector<int> remap(pts_.size(), -1);
    std::vector<int> used;
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      for (int v : f.v) {
        if (remap[v] < 0) {
          remap[v] = 0;
          used.push_back(v);
        }
      }
    }
    std::sort(used.begin(), used.end());
    TriangulatedHull hull;
    for (int v : used) {
      remap[v] = static_cast<int>(hull.vertices.size());
      hull.vertices.push_back(pts_[v]);
      hull.source_index.push_back(v);
    }
    for (const Face& f : faces_) {
      if (!f.alive) continue;
      hull.triangles.push_back({remap[f.v[0]], remap[f.v[1]], remap[f.v[2]]});
    }
    return hull;
  }

  std::span<const Point3> pts_;
  std::vector<Face> faces_;
  std::vector<int> pending_;
  std::vector<int> visible_;
  std::vector<HorizonEdge> horizon_;
  std::vector<int> created_;
  std::vector<int> start_of_, end_of_;
  int stamp_ = 0;
};

struct UnionFind {
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
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

// Groups points closer than tolerance * max(1, |p|, |q|) with a sweep along x.
void cluster_close_points(std::span<const Vec3> pts, double tolerance,
                          UnionFind& groups) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pts[a].x < pts[b].x; });
  double max_mag = 1;
  for (const Vec3& p : pts) max_mag = std::max(max_mag, norm(p));
  const double window = tolerance * max_mag;
  for (size_t i = 0; i < order.size(); ++i) {
    const Vec3& p = pts[order[i]];
    for (size_t j = i + 1; j < order.size(); ++j) {
      const Vec3& q = pts[order[j]];
      if (q.x - p.x > window) break;
      const double tol = tolerance * std::max({1.0, norm(p), norm(q)});
      if (norm(p - q) <= tol) groups.unite(order[i], order[j]);
    }
  }
}

}  // namespace

TriangulatedHull convex_hull(std::span<const Point3> points) {
  return Quickhull(points).run();
}

double TriangulatedHull::volume() const { return mesh().volume(); }
double TriangulatedHull::area() const { return mesh().area(); }

PolyhedronMesh TriangulatedHull::mesh() const {
  PolyhedronMesh m;
  m.vertices = vertices;
  for (const Triangle& t : triangles) m.faces.push_back({t[0], t[1], t[2]});
  return m;
}

std::vector<std::vector<int>> incident_fans(std::span<const Triangle> triangles,
                                            int num_vertices) {
  std::unordered_map<std::uint64_t, int> edge_face;
  edge_face.reserve(triangles.size() * 3);
  auto key = [](int a, int b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  std::vector<int> some_face(num_vertices, -1);
  for (size_t t = 0; t < triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      edge_face[key(triangles[t][k], triangles[t][(k + 1) % 3])] = static_cast<int>(t);
      some_face[triangles[t][k]] = static_cast<int>(t);
    }
  }
  std::vector<std::vector<int>> fans(num_vertices);
  for (int v = 0; v < num_vertices; ++v) {
    if (some_face[v] < 0) continue;
    int t = some_face[v];
    do {
      fans[v].push_back(t);
      const Triangle& tri = triangles[t];
      const int k = tri[0] == v ? 0 : (tri[1] == v ? 1 : 2);
      // The next triangle counter-clockwise around v holds edge v -> prev.
      const int prev = tri[(k + 2) % 3];
      auto it = edge_face.find(key(v, prev));
      if (it == edge_face.end()) {
        throw Error(ErrorCode::NonManifold, "open triangle fan");
      }
      t = it->second;
      if (fans[v].size() > triangles.size()) {
        throw Error(ErrorCode::NonManifold, "non-manifold vertex");
      }
    } while (t != some_face[v]);
  }
  return fans;
}

FacePlaneSet face_planes(const TriangulatedHull& hull, bool merge_coplanar) {
  const double diag = bounding_box_diagonal(hull.vertices);
  Vec3 centroid;
  for (const Point3& p : hull.vertices) centroid += p;
  centroid = centroid / static_cast<double>(hull.vertices.size());

  struct Candidate {
    int triangle;
    Halfspace plane;
    double area;
  };
  std::vector<Candidate> kept;
  std::vector<Vec3> dual;
  for (size_t t = 0; t < hull.triangles.size(); ++t) {
    const Triangle& tri = hull.triangles[t];
    const Point3 &a = hull.vertices[tri[0]], &b = hull.vertices[tri[1]],
                 &c = hull.vertices[tri[2]];
    const Vec3 n = cross(b - a, c - a);
    const double area = 0.5 * norm(n);
    if (area < 1e-8 * diag * diag) continue;
    const double offset = -std::max({dot(n, a), dot(n, b), dot(n, c)});
    const Halfspace h{n, offset};
    const double denom = h.eval(centroid);
    if (!(denom < 0)) continue;
    kept.push_back({static_cast<int>(t), h, area});
    dual.push_back(-n / denom * diag);
  }

  UnionFind groups(kept.size());
  cluster_close_points(dual, merge_coplanar ? 1e-9 : 1e-14, groups);

  std::vector<int> slot(kept.size(), -1);
  FacePlaneSet out;
  std::vector<int> representative;
  for (size_t i = 0; i < kept.size(); ++i) {
    const int root = groups.find(static_cast<int>(i));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.halfspaces.size());
      out.halfspaces.push_back(kept[i].plane);
      out.provenance.push_back({});
      representative.push_back(static_cast<int>(i));
    }
    const int s = slot[root];
    out.provenance[s].push_back(kept[i].triangle);
    if (kept[i].area > kept[representative[s]].area) representative[s] = static_cast<int>(i);
  }
  // Representative normal is the largest member's; the offset is widened so
  // every member vertex stays inside.
  for (size_t s = 0; s < out.halfspaces.size(); ++s) {
    const Vec3 n = kept[representative[s]].plane.n;
    double max_dot = -std::numeric_limits<double>::infinity();
    for (int t : out.provenance[s]) {
      for (int v : hull.triangles[t]) max_dot = std::max(max_dot, dot(n, hull.vertices[v]));
    }
    out.halfspaces[s] = {n, -max_dot};
  }
  return out;
}

FacePlaneSet make_plane_set(std::vector<Halfspace> halfspaces) {
  FacePlaneSet set;
  set.provenance.resize(halfspaces.size());
  for (size_t i = 0; i < halfspaces.size(); ++i) set.provenance[i] = {static_cast<int>(i)};
  set.halfspaces = std::move(halfspaces);
  return set;
}

IntersectionResult halfspace_intersection(std::span<const Halfspace> halfspaces,
                                          std::uint64_t seed) {
  IntersectionResult result;
  if (halfspaces.empty()) {
    result.status = IntersectionStatus::Unbounded;
    return result;
  }
  const ChebyshevOutcome cheb = chebyshev_center(halfspaces, seed);
  if (cheb.status == LpStatus::Infeasible) {
    result.status = IntersectionStatus::Empty;
    return result;
  }
  if (cheb.status == LpStatus::Unbounded) {
    result.status = IntersectionStatus::Unbounded;
    return result;
  }
  double scale = 1;
  for (const Halfspace& h : halfspaces) scale = std::max(scale, std::abs(h.b) / norm(h.n));
  result.center = cheb.result.center;
  result.radius = cheb.result.radius;
  if (cheb.result.radius <= 1e-12 * scale) {
    result.status = IntersectionStatus::Empty;
    return result;
  }

  const Point3 c = cheb.result.center;
  std::vector<Point3> dual;
  dual.reserve(halfspaces.size());
  for (const Halfspace& h : halfspaces) dual.push_back(-h.n / h.eval(c));

  TriangulatedHull dual_hull;
  try {
    dual_hull = convex_hull(dual);
  } catch (const Error&) {
    result.status = IntersectionStatus::Unbounded;
    return result;
  }
  // Bounded exactly when the origin is strictly inside the dual hull.
  const Point3 origin{0, 0, 0};
  for (const Triangle& t : dual_hull.triangles) {
    if (orient3(dual_hull.vertices[t[0]], dual_hull.vertices[t[1]],
                dual_hull.vertices[t[2]], origin) != Sign::Negative) {
      result.status = IntersectionStatus::Unbounded;
      return result;
    }
  }

  // One primal vertex per dual triangle; coincident ones are merged.
  std::vector<Point3> corner;
  corner.reserve(dual_hull.triangles.size());
  for (const Triangle& t : dual_hull.triangles) {
    const Point3& a = dual_hull.vertices[t[0]];
    const Vec3 eta = cross(dual_hull.vertices[t[1]] - a, dual_hull.vertices[t[2]] - a);
    const double beta = -dot(eta, a);
    corner.push_back(c - eta / beta);
  }
  const double diag = bounding_box_diagonal(corner);
  std::vector<Vec3> scaled;
  scaled.reserve(corner.size());
  for (const Point3& p : corner) scaled.push_back((p - c) / std::max(diag, 1e-300));
  UnionFind groups(corner.size());
  cluster_close_points(scaled, 1e-9, groups);

  std::vector<int> vertex_of(corner.size(), -1);
  std::vector<int> count(corner.size(), 0);
  std::vector<Vec3> sum(corner.size());
  for (size_t t = 0; t < corner.size(); ++t) {
    const int r = groups.find(static_cast<int>(t));
    sum[r] += corner[t];
    ++count[r];
  }
  for (size_t t = 0; t < corner.size(); ++t) {
    const int r = groups.find(static_cast<int>(t));
    if (vertex_of[r] < 0) {
      vertex_of[r] = static_cast<int>(result.mesh.vertices.size());
      result.mesh.vertices.push_back(sum[r] / count[r]);
    }
    vertex_of[t] = vertex_of[r];
  }

  const auto fans = incident_fans(dual_hull.triangles,
                                  static_cast<int>(dual_hull.vertices.size()));
  for (size_t v = 0; v < fans.size(); ++v) {
    std::vector<int> poly;
    for (int t : fans[v]) {
      const int pv = vertex_of[t];
      if (poly.empty() || poly.back() != pv) poly.push_back(pv);
    }
    while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    if (poly.size() < 3) continue;
    result.mesh.faces.push_back(std::move(poly));
    result.face_source.push_back(dual_hull.source_index[v]);
  }
  result.status = IntersectionStatus::Bounded;
  return result;
}

}  // namespace hullpare
