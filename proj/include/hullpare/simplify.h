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

#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "hullpare/dual.h"
#include "hullpare/geometry.h"
#include "hullpare/halfedge.h"
#include "hullpare/hull.h"

namespace hullpare {

enum class CostMode { Volume, Area };
enum class ApproxMode { Outer, Inner };
enum class RetriangulationMethod { Auto, FanFlip, Hull };

constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

/// Triangulates the hole left by removing ring.center so that the result is
/// the convex envelope of the ring facing the removed vertex. Auto uses fan
/// plus edge flips below valence 100 and the hull of the ring above.
LocalTriangulation retriangulate_one_ring(const OneRing& ring,
                                          std::span<const Point3> positions,
                                          RetriangulationMethod method = RetriangulationMethod::Auto);

/// True when tri's oriented boundary is exactly the ring polygon.
bool spans_ring(const OneRing& ring, const LocalTriangulation& tri);

/// spans_ring, the removed vertex is on or above every triangle, and every
/// interior edge is convex.
bool is_convex_envelope(const OneRing& ring, const LocalTriangulation& tri,
                        std::span<const Point3> positions);

/// True when the dual origin is not strictly inside every triangle of tri,
/// i.e. removing the vertex unbounds the primal polytope.
bool infinite_cost(const LocalTriangulation& tri, std::span<const Point3> positions);

/// Primal cap gained by removing a dual vertex: the polytope of the ring
/// halfspaces and the negated removed halfspace, built as the dual of the
/// closed local dual mesh (reversed tri plus the vertex's fan). Face 0 lies on
/// the removed plane. Throws NearInfinitePrimalVertex.
PolyhedronMesh primal_cap(const HalfedgeHull& dual, const OneRing& ring,
                          const LocalTriangulation& tri, const Point3& center);

/// Added primal volume or surface area of removing dual vertex v with
/// triangulation tri; kInfiniteCost when unbounded or numerically unusable.
double removal_cost(const HalfedgeHull& dual, int v, const LocalTriangulation& tri,
                    const Point3& center, CostMode mode);

struct SimplifyConfig {
  /// Outer mode: halfspaces to keep. Inner mode: hull vertices to keep.
  int target_faces = 18;
  CostMode cost_mode = CostMode::Volume;
  ApproxMode approx_mode = ApproxMode::Outer;
  /// Outer mode: indices into the input plane set. Inner mode: hull vertex
  /// indices. These are never removed.
  std::vector<int> constrained;
  std::uint64_t rng_seed = 0;
  /// Recompute every popped cost from a full halfspace intersection.
  bool exact_cost_check = false;
};

struct RemovalStep {
  int vertex = -1;
  double cost = 0;
  /// Volume (or area) delta from full recomputation; NaN unless
  /// exact_cost_check. Outer volume deltas are measured as the intersection
  /// of the surviving halfspaces with the complement of the removed one.
  double oracle_cost = std::numeric_limits<double>::quiet_NaN();
  /// Records refreshed after this removal.
  int recomputed = 0;
};

enum class SimplifyStatus { Complete, TargetUnreachable, AlreadyAtTarget };

struct SimplifiedHull {
  SimplifyStatus status = SimplifyStatus::Complete;
  ApproxMode mode = ApproxMode::Outer;
  std::vector<Halfspace> halfspaces;
  /// Outer mode: input plane index of each halfspace. Inner mode: hull vertex
  /// indices kept.
  std::vector<int> source_ids;
  PolyhedronMesh mesh;
  Point3 center;
  double chebyshev_radius = 0;
  double volume = 0;
  double area = 0;
  double input_volume = 0;
  double input_area = 0;
  double volume_ratio = 1;
  double area_ratio = 1;
  std::vector<RemovalStep> steps;
  std::vector<std::string> warnings;

  int reached() const { return static_cast<int>(halfspaces.size()); }
};

/// Greedy elimination with a lazy min-heap. Outer mode removes vertices of
/// the dual hull (primal halfspaces); inner mode removes vertices of the
/// primal hull directly. Exposed step by step for inspection.
class Simplifier {
 public:
  /// Outer mode over a plane set. reference_volume/area describe the input
  /// hull; when NaN they are computed from the planes.
  Simplifier(const FacePlaneSet& planes, const SimplifyConfig& config,
             double reference_volume = std::numeric_limits<double>::quiet_NaN(),
             double reference_area = std::numeric_limits<double>::quiet_NaN());
  /// Inner mode over a hull.
  Simplifier(const TriangulatedHull& hull, const SimplifyConfig& config);

  int num_alive() const { return mesh_.num_alive_vertices(); }
  std::vector<int> alive_ids() const { return mesh_.alive_vertices(); }
  const HalfedgeHull& mesh() const { return mesh_; }
  const Point3& center() const { return center_; }

  /// Cost of removing v right now, computed from scratch.
  double fresh_cost(int v) const;
  /// Removes the cheapest finite-cost vertex. False when none is left.
  bool step();
  /// Steps until target is reached or no finite removal remains.
  SimplifiedHull run();

  const std::vector<RemovalStep>& steps() const { return steps_; }
  double current_volume() const { return volume_; }
  double current_area() const { return area_; }
  std::vector<Halfspace> surviving_halfspaces() const;

 private:
  struct Record {
    LocalTriangulation tri;
    double cost = kInfiniteCost;
    std::uint64_t version = 0;
  };
  struct Entry {
    double cost;
    int vertex;
    std::uint64_t version;
    bool operator>(const Entry& o) const {
      return cost != o.cost ? cost > o.cost : vertex > o.vertex;
    }
  };

  void refresh(int v);
  double evaluate(int v, LocalTriangulation* tri) const;
  double oracle_measure() const;
  void init_records();

  SimplifyConfig config_;
  ApproxMode mode_;
  HalfedgeHull mesh_;
  std::vector<Halfspace> planes_;
  Point3 center_;
  double radius_ = 0;
  double diagonal_ = 1;
  double volume_ = 0;
  double area_ = 0;
  double input_volume_ = 0;
  double input_area_ = 0;
  std::vector<bool> constrained_;
  std::vector<Record> records_;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap_;
  std::vector<RemovalStep> steps_;
  std::vector<std::string> warnings_;
};

/// Convenience entry points. Points are hulled first; plane sets are used
/// as given.
SimplifiedHull simplify(std::span<const Point3> points, const SimplifyConfig& config);
SimplifiedHull simplify(const TriangulatedHull& hull, const SimplifyConfig& config);
SimplifiedHull simplify(const FacePlaneSet& planes, const SimplifyConfig& config);

}  // namespace hullpare
