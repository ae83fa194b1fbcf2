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

#include "hullpare/halfedge.h"

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "hullpare/error.h"

namespace hullpare {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

}  // namespace

PolygonConnectivity dual_connectivity(const PolygonConnectivity& mesh) {
  std::unordered_map<std::uint64_t, int> edge_face;
  std::vector<int> some_face(mesh.num_vertices, -1);
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& poly = mesh.faces[f];
    for (size_t k = 0; k < poly.size(); ++k) {
      const int a = poly[k], b = poly[(k + 1) % poly.size()];
      if (!edge_face.emplace(edge_key(a, b), static_cast<int>(f)).second) {
        throw Error(ErrorCode::NonManifold, "directed edge used twice");
      }
      some_face[a] = static_cast<int>(f);
    }
  }
  PolygonConnectivity dual;
  dual.num_vertices = static_cast<int>(mesh.faces.size());
  for (int v = 0; v < mesh.num_vertices; ++v) {
    if (some_face[v] < 0) continue;
    std::vector<int> around;
    int f = some_face[v];
    do {
      around.push_back(f);
      const auto& poly = mesh.faces[f];
      const auto k = std::find(poly.begin(), poly.end(), v) - poly.begin();
      const int prev = poly[(k + poly.size() - 1) % poly.size()];
      auto it = edge_face.find(edge_key(v, prev));
      if (it == edge_face.end() || around.size() > mesh.faces.size()) {
        throw Error(ErrorCode::NonManifold, "open or non-manifold vertex");
      }
      f = it->second;
    } while (f != some_face[v]);
    dual.faces.push_back(std::move(around));
  }
  return dual;
}

HalfedgeHull::HalfedgeHull(std::vector<Point3> positions,
                           std::span<const Triangle> triangles)
    : positions_(std::move(positions)), vertices_(positions_.size()) {
  std::unordered_map<std::uint64_t, int> by_edge;
  by_edge.reserve(triangles.size() * 3);
  for (const Triangle& t : triangles) {
    for (int v : t) {
      if (v < 0 || v >= num_vertex_ids()) {
        throw Error(ErrorCode::NonManifold, "triangle references unknown vertex");
      }
    }
    const int f = add_triangle(t);
    int h = faces_[f].edge;
    for (int k = 0; k < 3; ++k, h = halfedges_[h].next) {
      if (!by_edge.emplace(edge_key(halfedges_[h].origin, dest(h)), h).second) {
        throw Error(ErrorCode::NonManifold, "directed edge used twice");
      }
    }
  }
  for (int h = 0; h < static_cast<int>(halfedges_.size()); ++h) {
    auto it = by_edge.find(edge_key(dest(h), halfedges_[h].origin));
    if (it == by_edge.end()) throw Error(ErrorCode::NonManifold, "mesh is not closed");
    halfedges_[h].twin = it->second;
  }
  for (const Halfedge& h : halfedges_) {
    Vertex& v = vertices_[h.origin];
    if (!v.alive) {
      v.alive = true;
      v.out = static_cast<int>(&h - halfedges_.data());
      ++alive_vertices_;
    }
  }
}

bool HalfedgeHull::is_alive(int v) const {
  return v >= 0 && v < num_vertex_ids() && vertices_[v].alive;
}

std::vector<int> HalfedgeHull::alive_vertices() const {
  std::vector<int> out;
  out.reserve(alive_vertices_);
  for (int v = 0; v < num_vertex_ids(); ++v) {
    if (vertices_[v].alive) out.push_back(v);
  }
  return out;
}

int HalfedgeHull::add_triangle(const Triangle& t) {
  const int f = static_cast<int>(faces_.size());
  const int base = static_cast<int>(halfedges_.size());
  for (int k = 0; k < 3; ++k) {
    halfedges_.push_back({t[k], -1, base + (k + 1) % 3, f});
  }
  faces_.push_back({base, true});
  ++alive_faces_;
  alive_halfedges_ += 3;
  return f;
}

int HalfedgeHull::find_halfedge(int from, int to) const {
  const int start = vertices_[from].out;
  int h = start;
  for (size_t guard = 0; guard <= halfedges_.size(); ++guard) {
    if (dest(h) == to) return h;
    h = halfedges_[halfedges_[halfedges_[h].next].next].twin;
    if (h == start) return -1;
  }
  throw Error(ErrorCode::NonManifold, "vertex rotation does not close");
}

OneRing HalfedgeHull::one_ring(int v) const {
  if (!is_alive(v)) throw Error(ErrorCode::DeadVertex, "one_ring of a dead vertex");
  OneRing ring;
  ring.center = v;
  const int start = vertices_[v].out;
  int h = start;
  do {
    ring.neighbors.push_back(dest(h));
    ring.faces.push_back(halfedges_[h].face);
    h = halfedges_[halfedges_[halfedges_[h].next].next].twin;
    if (ring.neighbors.size() > halfedges_.size()) {
      throw Error(ErrorCode::NonManifold, "vertex rotation does not close");
    }
  } while (h != start);
  return ring;
}

void HalfedgeHull::replace_patch(std::span<const int> old_faces,
                                 std::span<const Triangle> fill,
                                 int removed_vertex, int restored_vertex) {
  std::unordered_set<int> patch(old_faces.begin(), old_faces.end());

  // Boundary of the patch, keyed by the directed edge as seen from inside.
  std::unordered_map<std::uint64_t, int> boundary;  // edge -> outer twin
  for (int f : old_faces) {
    int h = faces_[f].edge;
    for (int k = 0; k < 3; ++k, h = halfedges_[h].next) {
      const int t = halfedges_[h].twin;
      if (!patch.count(halfedges_[t].face)) {
        boundary.emplace(edge_key(halfedges_[h].origin, dest(h)), t);
      }
    }
  }

  std::unordered_set<std::uint64_t> fill_edges;
  for (const Triangle& t : fill) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      throw Error(ErrorCode::BoundaryMismatch, "degenerate fill triangle");
    }
    for (int k = 0; k < 3; ++k) {
      if (!fill_edges.insert(edge_key(t[k], t[(k + 1) % 3])).second) {
        throw Error(ErrorCode::BoundaryMismatch, "fill repeats a directed edge");
      }
    }
  }
  size_t matched = 0;
  for (const Triangle& t : fill) {
    for (int k = 0; k < 3; ++k) {
      const int a = t[k], b = t[(k + 1) % 3];
      if (boundary.count(edge_key(a, b))) {
        ++matched;
        continue;
      }
      if (!fill_edges.count(edge_key(b, a))) {
        throw Error(ErrorCode::BoundaryMismatch, "fill boundary differs from the hole");
      }
      if (a == restored_vertex || b == restored_vertex) continue;
      const int existing = find_halfedge(a, b);
      if (existing >= 0 && !patch.count(halfedges_[existing].face)) {
        throw Error(ErrorCode::NonManifold, "fill diagonal is already an edge");
      }
    }
  }
  if (matched != boundary.size()) {
    throw Error(ErrorCode::BoundaryMismatch, "fill does not cover the hole boundary");
  }

  for (int f : old_faces) {
    int h = faces_[f].edge;
    for (int k = 0; k < 3; ++k) {
      const int next = halfedges_[h].next;
      halfedges_[h] = Halfedge{};
      h = next;
    }
    faces_[f] = Face{};
    --alive_faces_;
    alive_halfedges_ -= 3;
  }

  std::unordered_map<std::uint64_t, int> interior;
  for (const Triangle& t : fill) {
    const int f = add_triangle(t);
    int h = faces_[f].edge;
    for (int k = 0; k < 3; ++k, h = halfedges_[h].next) {
      const int a = halfedges_[h].origin, b = dest(h);
      vertices_[a].out = h;
      auto outer = boundary.find(edge_key(a, b));
      if (outer != boundary.end()) {
        halfedges_[h].twin = outer->second;
        halfedges_[outer->second].twin = h;
        continue;
      }
      auto other = interior.find(edge_key(b, a));
      if (other != interior.end()) {
        halfedges_[h].twin = other->second;
        halfedges_[other->second].twin = h;
      } else {
        interior.emplace(edge_key(a, b), h);
      }
    }
  }

  if (removed_vertex >= 0) {
    vertices_[removed_vertex] = Vertex{};
    --alive_vertices_;
  }
  if (restored_vertex >= 0) {
    vertices_[restored_vertex].alive = true;
    ++alive_vertices_;
  }
  maybe_compact();
}

void HalfedgeHull::remove_vertex(int v, const LocalTriangulation& tri) {
  const OneRing ring = one_ring(v);
  if (alive_vertices_ - 1 < 4) {
    throw Error(ErrorCode::MinimalComplex, "cannot remove below a tetrahedron");
  }
  if (static_cast<int>(tri.triangles.size()) != ring.size() - 2) {
    throw Error(ErrorCode::BoundaryMismatch, "fill must have |ring| - 2 triangles");
  }
  for (const Triangle& t : tri.triangles) {
    for (int u : t) {
      if (u == v || std::find(ring.neighbors.begin(), ring.neighbors.end(), u) ==
                        ring.neighbors.end()) {
        throw Error(ErrorCode::BoundaryMismatch, "fill uses a vertex off the ring");
      }
    }
  }
  replace_patch(ring.faces, tri.triangles, v, -1);
}

void HalfedgeHull::restore_vertex(int v, const OneRing& ring,
                                  const LocalTriangulation& tri) {
  if (v < 0 || v >= num_vertex_ids() || vertices_[v].alive) {
    throw Error(ErrorCode::BoundaryMismatch, "restored vertex must be a dead id");
  }
  std::vector<int> old_faces;
  for (const Triangle& t : tri.triangles) {
    const int h = find_halfedge(t[0], t[1]);
    if (h < 0 || halfedges_[halfedges_[h].next].next < 0 ||
        dest(halfedges_[h].next) != t[2]) {
      throw Error(ErrorCode::BoundaryMismatch, "triangle not present in the mesh");
    }
    old_faces.push_back(halfedges_[h].face);
  }
  std::vector<Triangle> fan;
  for (int k = 0; k < ring.size(); ++k) {
    fan.push_back({v, ring.neighbors[k], ring.neighbors[(k + 1) % ring.size()]});
  }
  replace_patch(old_faces, fan, -1, v);
}

std::vector<Triangle> HalfedgeHull::triangles() const {
  std::vector<Triangle> out;
  out.reserve(alive_faces_);
  for (const Face& f : faces_) {
    if (!f.alive) continue;
    const int h = f.edge;
    out.push_back({halfedges_[h].origin, halfedges_[halfedges_[h].next].origin,
                   halfedges_[halfedges_[halfedges_[h].next].next].origin});
  }
  return out;
}

PolygonConnectivity HalfedgeHull::connectivity() const {
  PolygonConnectivity c;
  c.num_vertices = num_vertex_ids();
  for (const Triangle& t : triangles()) c.faces.push_back({t[0], t[1], t[2]});
  return c;
}

PolygonConnectivity HalfedgeHull::topological_dual() const {
  std::vector<int> face_index(faces_.size(), -1);
  int next = 0;
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].alive) face_index[f] = next++;
  }
  PolygonConnectivity dual;
  dual.num_vertices = next;
  for (int v : alive_vertices()) {
    std::vector<int> poly;
    for (int f : one_ring(v).faces) poly.push_back(face_index[f]);
    dual.faces.push_back(std::move(poly));
  }
  return dual;
}

void HalfedgeHull::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::NonManifold, what); };
  int halfedge_count = 0, face_count = 0;
  for (int h = 0; h < static_cast<int>(halfedges_.size()); ++h) {
    const Halfedge& e = halfedges_[h];
    if (e.origin < 0) continue;
    ++halfedge_count;
    if (e.twin < 0 || halfedges_[e.twin].origin < 0) fail("missing twin");
    if (halfedges_[e.twin].twin != h) fail("twin is not an involution");
    if (halfedges_[e.twin].origin != dest(h)) fail("twin endpoints differ");
    if (halfedges_[halfedges_[halfedges_[e.next].next].next].origin != e.origin ||
        halfedges_[halfedges_[e.next].next].next != h) {
      fail("face cycle is not a triangle");
    }
    if (!faces_[e.face].alive) fail("halfedge on dead face");
    if (!vertices_[e.origin].alive) fail("halfedge from dead vertex");
  }
  for (const Face& f : faces_) face_count += f.alive ? 1 : 0;
  if (halfedge_count != alive_halfedges_ || face_count != alive_faces_) fail("counts drifted");
  int vertex_count = 0;
  for (int v = 0; v < num_vertex_ids(); ++v) {
    if (!vertices_[v].alive) continue;
    ++vertex_count;
    const int out = vertices_[v].out;
    if (out < 0 || halfedges_[out].origin != v) fail("stale outgoing halfedge");
    const OneRing ring = one_ring(v);
    if (ring.size() < 3) fail("valence below three");
    std::vector<int> sorted = ring.neighbors;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail("repeated neighbour");
    }
  }
  if (vertex_count != alive_vertices_) fail("vertex count drifted");
  if (alive_vertices_ - alive_halfedges_ / 2 + alive_faces_ != 2) fail("Euler characteristic is not 2");
}

void HalfedgeHull::maybe_compact() {
  const size_t dead = halfedges_.size() - static_cast<size_t>(alive_halfedges_);
  if (dead > 1024 && dead > 2 * static_cast<size_t>(alive_halfedges_)) compact();
}

void HalfedgeHull::compact() {
  std::vector<int> he_map(halfedges_.size(), -1), face_map(faces_.size(), -1);
  int nh = 0, nf = 0;
  for (size_t h = 0; h < halfedges_.size(); ++h) {
    if (halfedges_[h].origin >= 0) he_map[h] = nh++;
  }
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (faces_[f].alive) face_map[f] = nf++;
  }
  std::vector<Halfedge> halfedges(nh);
  for (size_t h = 0; h < halfedges_.size(); ++h) {
    if (he_map[h] < 0) continue;
    const Halfedge& e = halfedges_[h];
    halfedges[he_map[h]] = {e.origin, he_map[e.twin], he_map[e.next], face_map[e.face]};
  }
  std::vector<Face> faces(nf);
  for (size_t f = 0; f < faces_.size(); ++f) {
    if (face_map[f] >= 0) faces[face_map[f]] = {he_map[faces_[f].edge], true};
  }
  for (Vertex& v : vertices_) {
    if (v.alive) v.out = he_map[v.out];
  }
  halfedges_ = std::move(halfedges);
  faces_ = std::move(faces);
}

}  // namespace hullpare
