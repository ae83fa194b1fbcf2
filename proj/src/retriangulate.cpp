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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_map>

#include "hullpare/error.h"
#include "hullpare/simplify.h"

namespace hullpare {

namespace {

constexpr int kHullValence = 100;

std::uint64_t key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

int third(const Triangle& t, int a, int b) {
  for (int v : t) {
    if (v != a && v != b) return v;
  }
  return -1;
}

LocalTriangulation fan_flip(const OneRing& ring, std::span<const Point3> pos) {
  const int k = ring.size();
  const auto& n = ring.neighbors;
  LocalTriangulation out;
  // Fan from the lowest id so ties (flat rings) resolve deterministically.
  const int s = static_cast<int>(std::min_element(n.begin(), n.end()) - n.begin());
  for (int i = 1; i + 1 < k; ++i) {
    out.triangles.push_back({n[s], n[(s + i) % k], n[(s + i + 1) % k]});
  }
  if (k <= 3) return out;

  auto& tris = out.triangles;
  std::unordered_map<std::uint64_t, int> owner;
  auto index = [&](int t) {
    for (int e = 0; e < 3; ++e) owner[key(tris[t][e], tris[t][(e + 1) % 3])] = t;
  };
  auto unindex = [&](int t) {
    for (int e = 0; e < 3; ++e) owner.erase(key(tris[t][e], tris[t][(e + 1) % 3]));
  };
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) index(t);

  const int max_flips = k * k;
  int flips = 0;
  bool changed = true;
  while (changed && flips < max_flips) {
    changed = false;
    for (int t1 = 0; t1 < static_cast<int>(tris.size()) && flips < max_flips; ++t1) {
      for (int e = 0; e < 3; ++e) {
        const int u = tris[t1][e], w = tris[t1][(e + 1) % 3];
        auto it = owner.find(key(w, u));
        if (it == owner.end()) continue;  // ring edge
        const int t2 = it->second;
        const int x = third(tris[t1], u, w), y = third(tris[t2], u, w);
        if (orient3(pos[u], pos[w], pos[x], pos[y]) != Sign::Positive) continue;
        if (owner.count(key(x, y)) || owner.count(key(y, x))) continue;
        unindex(t1);
        unindex(t2);
        tris[t1] = {u, y, x};
        tris[t2] = {y, w, x};
        index(t1);
        index(t2);
        ++flips;
        changed = true;
        break;
      }
    }
  }
  return out;
}

LocalTriangulation hull_envelope(const OneRing& ring, std::span<const Point3> pos) {
  std::vector<Point3> local;
  local.reserve(ring.neighbors.size());
  for (int v : ring.neighbors) local.push_back(pos[v]);
  const TriangulatedHull hull = convex_hull(local);
  const Point3& apex = pos[ring.center];
  LocalTriangulation out;
  for (const Triangle& t : hull.triangles) {
    const Triangle ids{ring.neighbors[hull.source_index[t[0]]],
                       ring.neighbors[hull.source_index[t[1]]],
                       ring.neighbors[hull.source_index[t[2]]]};
    if (orient3(pos[ids[0]], pos[ids[1]], pos[ids[2]], apex) == Sign::Positive) {
      out.triangles.push_back(ids);
    }
  }
  return out;
}

}  // namespace

bool spans_ring(const OneRing& ring, const LocalTriangulation& tri) {
  const int k = ring.size();
  if (static_cast<int>(tri.triangles.size()) != k - 2) return false;
  std::unordered_map<std::uint64_t, int> edges;
  for (const Triangle& t : tri.triangles) {
    for (int e = 0; e < 3; ++e) {
      if (!edges.emplace(key(t[e], t[(e + 1) % 3]), 0).second) return false;
    }
  }
  int boundary = 0;
  for (int i = 0; i < k; ++i) {
    const std::uint64_t ek = key(ring.neighbors[i], ring.neighbors[(i + 1) % k]);
    if (!edges.count(ek)) return false;
    edges[ek] = 1;
    ++boundary;
  }
  for (const auto& [ek, is_boundary] : edges) {
    if (is_boundary) continue;
    const int a = static_cast<int>(ek >> 32), b = static_cast<int>(ek & 0xffffffffu);
    if (!edges.count(key(b, a))) return false;
  }
  return boundary == k;
}

LocalTriangulation retriangulate_one_ring(const OneRing& ring,
                                          std::span<const Point3> positions,
                                          RetriangulationMethod method) {
  const bool use_hull = method == RetriangulationMethod::Hull ||
                        (method == RetriangulationMethod::Auto && ring.size() >= kHullValence);
  if (use_hull) {
    try {
      LocalTriangulation tri = hull_envelope(ring, positions);
      if (spans_ring(ring, tri)) return tri;
    } catch (const Error&) {
      // Flat ring; the fan handles it.
    }
  }
  return fan_flip(ring, positions);
}

bool is_convex_envelope(const OneRing& ring, const LocalTriangulation& tri,
                        std::span<const Point3> positions) {
  if (!spans_ring(ring, tri)) return false;
  const Point3& apex = positions[ring.center];
  std::unordered_map<std::uint64_t, int> owner;
  for (size_t t = 0; t < tri.triangles.size(); ++t) {
    const Triangle& f = tri.triangles[t];
    if (orient3(positions[f[0]], positions[f[1]], positions[f[2]], apex) == Sign::Negative) {
      return false;
    }
    for (int e = 0; e < 3; ++e) owner[key(f[e], f[(e + 1) % 3])] = static_cast<int>(t);
  }
  for (const Triangle& f : tri.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int u = f[e], w = f[(e + 1) % 3];
      auto it = owner.find(key(w, u));
      if (it == owner.end()) continue;
      const int y = third(tri.triangles[it->second], u, w);
      if (orient3(positions[u], positions[w], positions[third(f, u, w)], positions[y]) ==
          Sign::Positive) {
        return false;
      }
    }
  }
  return true;
}

bool infinite_cost(const LocalTriangulation& tri, std::span<const Point3> positions) {
  const Point3 origin{0, 0, 0};
  for (const Triangle& t : tri.triangles) {
    if (orient3(positions[t[0]], positions[t[1]], positions[t[2]], origin) != Sign::Negative) {
      return true;
    }
  }
  return false;
}

PolyhedronMesh primal_cap(const HalfedgeHull& dual, const OneRing& ring,
                          const LocalTriangulation& tri, const Point3& center) {
  // Local dual mesh over {center vertex, ring...}: the vertex's fan plus the
  // reversed new triangles. It is closed and genus 0.
  const int k = ring.size();
  std::map<int, int> local;
  local[ring.center] = 0;
  for (int i = 0; i < k; ++i) local[ring.neighbors[i]] = i + 1;
  std::vector<int> global(k + 1);
  global[0] = ring.center;
  for (int i = 0; i < k; ++i) global[i + 1] = ring.neighbors[i];

  PolygonConnectivity closed;
  closed.num_vertices = k + 1;
  for (int i = 0; i < k; ++i) closed.faces.push_back({0, i + 1, (i + 1) % k + 1});
  for (const Triangle& t : tri.triangles) {
    closed.faces.push_back({local.at(t[0]), local.at(t[2]), local.at(t[1])});
  }

  PolyhedronMesh cap;
  cap.vertices.reserve(closed.faces.size());
  for (const auto& f : closed.faces) {
    const DualFacePlane plane = dual_face_plane(
        dual.position(global[f[0]]), dual.position(global[f[1]]), dual.position(global[f[2]]));
    cap.vertices.push_back(from_dual(plane, center));
  }
  cap.faces = dual_connectivity(closed).faces;
  return cap;
}

double removal_cost(const HalfedgeHull& dual, int v, const LocalTriangulation& tri,
                    const Point3& center, CostMode mode) {
  const std::span<const Point3> pos = dual.positions();
  if (infinite_cost(tri, pos)) return kInfiniteCost;
  const OneRing ring = dual.one_ring(v);
  PolyhedronMesh cap;
  try {
    cap = primal_cap(dual, ring, tri, center);
  } catch (const Error&) {
    return kInfiniteCost;
  }
  const double extent = bounding_box_diagonal(cap.vertices);
  if (!std::isfinite(extent)) return kInfiniteCost;

  // Dual-of-dual orientation makes the Gauss sum the negated cap volume.
  const double volume = -cap.volume();
  const double noise = 1e-9 * extent * extent * extent;
  if (!std::isfinite(volume) || volume < -noise) return kInfiniteCost;

  if (mode == CostMode::Volume) return std::max(volume, 0.0);

  double added = 0;
  for (size_t f = 1; f < cap.faces.size(); ++f) {
    added += norm(polygon_area_normal(cap.face_points(static_cast<int>(f))));
  }
  const double removed = norm(polygon_area_normal(cap.face_points(0)));
  const double delta = added - removed;
  if (!std::isfinite(delta)) return kInfiniteCost;
  return std::max(delta, 0.0);
}

}  // namespace hullpare
