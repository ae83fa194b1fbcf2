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

namespace hullpare {

/// Neighbours N of a vertex in counter-clockwise order seen from outside;
/// faces[k] is the triangle (center, neighbors[k], neighbors[k+1]).
struct OneRing {
  int center = -1;
  std::vector<int> neighbors;
  std::vector<int> faces;

  int size() const { return static_cast<int>(neighbors.size()); }
};

/// Triangles over the ring vertices whose boundary, as oriented, is the ring
/// polygon n0 -> n1 -> ... -> n0.
struct LocalTriangulation {
  std::vector<Triangle> triangles;
};

/// Polygon connectivity: faces index vertices, counter-clockwise from outside.
struct PolygonConnectivity {
  int num_vertices = 0;
  std::vector<std::vector<int>> faces;
};

/// Vertex-face dual of a closed oriented polygon mesh: one dual vertex per
/// face, one dual face per vertex listing the faces around it.
PolygonConnectivity dual_connectivity(const PolygonConnectivity& mesh);

/// Closed, manifold, always-triangulated mesh with stable vertex ids. Removed
/// vertices and faces are tombstoned; halfedge and face storage is compacted
/// periodically without touching vertex ids.
class HalfedgeHull {
 public:
  HalfedgeHull() = default;

  /// Vertices not referenced by any triangle start out dead.
  HalfedgeHull(std::vector<Point3> positions, std::span<const Triangle> triangles);

  int num_vertex_ids() const { return static_cast<int>(vertices_.size()); }
  int num_alive_vertices() const { return alive_vertices_; }
  int num_alive_faces() const { return alive_faces_; }
  int num_alive_edges() const { return alive_halfedges_ / 2; }
  bool is_alive(int v) const;
  const Point3& position(int v) const { return positions_[v]; }
  std::span<const Point3> positions() const { return positions_; }
  std::vector<int> alive_vertices() const;

  OneRing one_ring(int v) const;

  /// Removes v and fills its hole with tri. Throws DeadVertex,
  /// BoundaryMismatch (tri does not span the one-ring), MinimalComplex (fewer
  /// than four vertices would remain) or NonManifold (a diagonal of tri is
  /// already an edge elsewhere). The mesh is unchanged when it throws.
  void remove_vertex(int v, const LocalTriangulation& tri);

  /// Inverse of remove_vertex: deletes the triangles of tri and reconnects v
  /// to the ring with a fan.
  void restore_vertex(int v, const OneRing& ring, const LocalTriangulation& tri);

  /// Alive triangles.
  std::vector<Triangle> triangles() const;
  PolygonConnectivity connectivity() const;
  /// One polygon per alive vertex (in alive_vertices() order) over dual
  /// vertices numbered in triangles() order.
  PolygonConnectivity topological_dual() const;

  /// Throws NonManifold when an invariant is broken.
  void validate() const;

  void compact();

 private:
  struct Vertex {
    int out = -1;
    bool alive = false;
  };
  struct Halfedge {
    int origin = -1;
    int twin = -1;
    int next = -1;
    int face = -1;
  };
  struct Face {
    int edge = -1;
    bool alive = false;
  };

  int dest(int h) const { return halfedges_[h].origin == -1 ? -1 : halfedges_[halfedges_[h].next].origin; }
  int find_halfedge(int from, int to) const;
  int add_triangle(const Triangle& t);
  void replace_patch(std::span<const int> old_faces, std::span<const Triangle> fill,
                     int removed_vertex, int restored_vertex);
  void maybe_compact();

  std::vector<Point3> positions_;
  std::vector<Vertex> vertices_;
  std::vector<Halfedge> halfedges_;
  std::vector<Face> faces_;
  int alive_vertices_ = 0;
  int alive_faces_ = 0;
  int alive_halfedges_ = 0;
};

}  // namespace hullpare
