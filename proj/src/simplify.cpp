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

#include "hullpare/simplify.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hullpare/error.h"
#include "hullpare/lp.h"

namespace hullpare {

namespace {

constexpr double kCostGuard = 1e18;

void check_target(const SimplifyConfig& config) {
  if (config.target_faces < 4) {
    throw Error(ErrorCode::InvalidConfig, "target must be at least 4");
  }
}

std::vector<bool> constrained_flags(const SimplifyConfig& config, int count) {
  std::vector<bool> flags(count, false);
  for (int id : config.constrained) {
    if (id < 0 || id >= count) {
      throw Error(ErrorCode::InvalidConfig,
                  "constrained id " + std::to_string(id) + " does not exist");
    }
    flags[id] = true;
  }
  return flags;
}

}  // namespace

Simplifier::Simplifier(const FacePlaneSet& planes, const SimplifyConfig& config,
                       double reference_volume, double reference_area)
    : config_(config), mode_(ApproxMode::Outer), planes_(planes.halfspaces) {
  check_target(config);
  if (planes_.size() < 4) {
    throw Error(ErrorCode::DegenerateInput, "need at least 4 halfspaces");
  }
  constrained_ = constrained_flags(config, static_cast<int>(planes_.size()));

  const ChebyshevOutcome cheb = chebyshev_center(planes_, config.rng_seed);
  if (cheb.status == LpStatus::Infeasible) {
    throw Error(ErrorCode::Empty, "halfspace intersection is empty");
  }
  if (cheb.status == LpStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "halfspace intersection is unbounded");
  }
  double scale = 1;
  for (const Halfspace& h : planes_) scale = std::max(scale, std::abs(h.b) / norm(h.n));
  if (cheb.result.radius <= 1e-12 * scale) {
    throw Error(ErrorCode::Empty, "halfspace intersection has no interior");
  }
  center_ = cheb.result.center;
  radius_ = cheb.result.radius;

  DualHull dual = build_dual_hull(planes, center_);
  mesh_ = std::move(dual.mesh);
  const Point3 origin{0, 0, 0};
  for (const Triangle& t : mesh_.triangles()) {
    if (orient3(mesh_.position(t[0]), mesh_.position(t[1]), mesh_.position(t[2]), origin) !=
        Sign::Negative) {
      throw Error(ErrorCode::Unbounded, "halfspace intersection is unbounded");
    }
  }

  const PolyhedronMesh initial = extract_primal(mesh_, center_);
  volume_ = initial.volume();
  area_ = initial.area();
  diagonal_ = bounding_box_diagonal(initial.vertices);
  input_volume_ = std::isnan(reference_volume) ? volume_ : reference_volume;
  input_area_ = std::isnan(reference_area) ? area_ : reference_area;

  if (radius_ < 1e-7 * diagonal_) {
    warnings_.push_back("dualization center is within 1e-7 diagonal of a face; "
                        "results may be numerically sensitive");
  }
  const auto redundant = std::count(dual.redundant.begin(), dual.redundant.end(), true);
  if (redundant > 0) {
    warnings_.push_back(std::to_string(redundant) +
                        " input halfspaces do not touch the intersection and were dropped");
  }
  init_records();
}

Simplifier::Simplifier(const TriangulatedHull& hull, const SimplifyConfig& config)
    : config_(config), mode_(ApproxMode::Inner) {
  check_target(config);
  mesh_ = HalfedgeHull(hull.vertices, hull.triangles);
  constrained_ = constrained_flags(config, static_cast<int>(hull.vertices.size()));
  volume_ = input_volume_ = hull.volume();
  area_ = input_area_ = hull.area();
  diagonal_ = bounding_box_diagonal(hull.vertices);
  Vec3 centroid;
  for (const Point3& p : hull.vertices) centroid += p;
  center_ = centroid / static_cast<double>(hull.vertices.size());
  init_records();
}

void Simplifier::init_records() {
  records_.assign(mesh_.num_vertex_ids(), Record{});
  for (int v : mesh_.alive_vertices()) refresh(v);
}

double Simplifier::evaluate(int v, LocalTriangulation* tri) const {
  const OneRing ring = mesh_.one_ring(v);
  const std::span<const Point3> pos = mesh_.positions();
  *tri = retriangulate_one_ring(ring, pos);
  if (!is_convex_envelope(ring, *tri, pos)) return kInfiniteCost;

  const double power = config_.cost_mode == CostMode::Volume ? 3 : 2;
  const double guard = kCostGuard * std::pow(diagonal_, power);
  if (mode_ == ApproxMode::Outer) {
    const double cost = removal_cost(mesh_, v, *tri, center_, config_.cost_mode);
    return std::abs(cost) > guard ? kInfiniteCost : cost;
  }

  // Inner: the removed region is closed by the vertex's fan and the reversed
  // new triangles; measured relative to the removed vertex the fan vanishes.
  const Point3& apex = pos[v];
  if (config_.cost_mode == CostMode::Volume) {
    double volume = 0;
    for (const Triangle& t : tri->triangles) {
      volume += dot(pos[t[0]] - apex, cross(pos[t[2]] - apex, pos[t[1]] - apex));
    }
    volume = std::max(volume / 6.0, 0.0);
    if (volume >= volume_ * (1 - 1e-12)) return kInfiniteCost;
    return volume;
  }
  double fan = 0, cap = 0;
  for (int k = 0; k < ring.size(); ++k) {
    const Point3& a = pos[ring.neighbors[k]];
    const Point3& b = pos[ring.neighbors[(k + 1) % ring.size()]];
    fan += 0.5 * norm(cross(a - apex, b - apex));
  }
  for (const Triangle& t : tri->triangles) {
    cap += 0.5 * norm(cross(pos[t[1]] - pos[t[0]], pos[t[2]] - pos[t[0]]));
  }
  return std::max(fan - cap, 0.0);
}

double Simplifier::fresh_cost(int v) const {
  if (constrained_[v]) return kInfiniteCost;
  LocalTriangulation tri;
  return evaluate(v, &tri);
}

void Simplifier::refresh(int v) {
  Record& rec = records_[v];
  ++rec.version;
  if (constrained_[v]) {
    rec.cost = kInfiniteCost;
    return;
  }
  rec.cost = evaluate(v, &rec.tri);
  if (std::isfinite(rec.cost)) heap_.push({rec.cost, v, rec.version});
}

std::vector<Halfspace> Simplifier::surviving_halfspaces() const {
  std::vector<Halfspace> out;
  for (int v : mesh_.alive_vertices()) out.push_back(planes_[v]);
  return out;
}

double Simplifier::oracle_measure() const {
  PolyhedronMesh mesh;
  if (mode_ == ApproxMode::Outer) {
    const auto planes = surviving_halfspaces();
    const IntersectionResult r = halfspace_intersection(planes, config_.rng_seed);
    if (r.status != IntersectionStatus::Bounded) return kInfiniteCost;
    mesh = r.mesh;
  } else {
    std::vector<Point3> pts;
    for (int v : mesh_.alive_vertices()) pts.push_back(mesh_.position(v));
    mesh = convex_hull(pts).mesh();
  }
  return config_.cost_mode == CostMode::Volume ? mesh.volume() : mesh.area();
}

bool Simplifier::step() {
  while (!heap_.empty()) {
    const Entry top = heap_.top();
    heap_.pop();
    if (!mesh_.is_alive(top.vertex) || records_[top.vertex].version != top.version) continue;

    Record& rec = records_[top.vertex];
    const OneRing ring = mesh_.one_ring(top.vertex);
    const bool cap_oracle = mode_ == ApproxMode::Outer && config_.cost_mode == CostMode::Volume;
    const double before = config_.exact_cost_check && !cap_oracle ? oracle_measure() : 0;
    try {
      mesh_.remove_vertex(top.vertex, rec.tri);
    } catch (const Error&) {
      rec.cost = kInfiniteCost;
      ++rec.version;
      continue;
    }

    RemovalStep s;
    s.vertex = top.vertex;
    s.cost = rec.cost;
    if (config_.exact_cost_check && cap_oracle) {
      // The added region is the remaining polytope beyond the removed plane;
      // measuring it directly avoids cancellation between two full volumes.
      std::vector<Halfspace> cap = surviving_halfspaces();
      const Halfspace& removed = planes_[top.vertex];
      cap.push_back({-removed.n, -removed.b});
      const IntersectionResult r = halfspace_intersection(cap, config_.rng_seed);
      s.oracle_cost = r.status == IntersectionStatus::Bounded   ? r.mesh.volume()
                      : r.status == IntersectionStatus::Empty ? 0.0
                                                              : kInfiniteCost;
    } else if (config_.exact_cost_check) {
      const double after = oracle_measure();
      s.oracle_cost = mode_ == ApproxMode::Outer ? after - before : before - after;
    }
    const double sign = mode_ == ApproxMode::Outer ? 1 : -1;
    if (config_.cost_mode == CostMode::Volume) {
      volume_ += sign * s.cost;
    } else {
      area_ += sign * s.cost;
    }
    rec = Record{LocalTriangulation{}, kInfiniteCost, rec.version + 1};
    for (int j : ring.neighbors) {
      refresh(j);
      ++s.recomputed;
    }
    steps_.push_back(s);
    return true;
  }
  return false;
}

SimplifiedHull Simplifier::run() {
  SimplifiedHull result;
  result.mode = mode_;
  if (steps_.empty() && num_alive() <= config_.target_faces) {
    result.status = SimplifyStatus::AlreadyAtTarget;
    warnings_.push_back("input already has " + std::to_string(num_alive()) +
                        " elements, at or below the target of " +
                        std::to_string(config_.target_faces));
  }
  while (num_alive() > config_.target_faces) {
    if (!step()) {
      result.status = SimplifyStatus::TargetUnreachable;
      warnings_.push_back("every remaining removal is unbounded or constrained; stopped at " +
                          std::to_string(num_alive()));
      break;
    }
  }

  const std::vector<int> alive = mesh_.alive_vertices();
  if (mode_ == ApproxMode::Outer) {
    for (int v : alive) result.halfspaces.push_back(planes_[v]);
    result.source_ids = alive;
    result.mesh = extract_primal(mesh_, center_);
  } else {
    std::vector<int> local(mesh_.num_vertex_ids(), -1);
    for (int v : alive) {
      local[v] = static_cast<int>(result.mesh.vertices.size());
      result.mesh.vertices.push_back(mesh_.position(v));
    }
    TriangulatedHull kept;
    kept.vertices = result.mesh.vertices;
    for (const Triangle& t : mesh_.triangles()) {
      result.mesh.faces.push_back({local[t[0]], local[t[1]], local[t[2]]});
      kept.triangles.push_back({local[t[0]], local[t[1]], local[t[2]]});
    }
    result.halfspaces = face_planes(kept, true).halfspaces;
    result.source_ids = alive;
  }
  result.center = center_;
  result.chebyshev_radius = radius_;
  result.volume = result.mesh.volume();
  result.area = result.mesh.area();
  result.input_volume = input_volume_;
  result.input_area = input_area_;
  result.volume_ratio = result.volume / input_volume_;
  result.area_ratio = result.area / input_area_;
  result.steps = steps_;
  result.warnings = warnings_;
  return result;
}

SimplifiedHull simplify(std::span<const Point3> points, const SimplifyConfig& config) {
  return simplify(convex_hull(points), config);
}

SimplifiedHull simplify(const TriangulatedHull& hull, const SimplifyConfig& config) {
  if (config.approx_mode == ApproxMode::Inner) return Simplifier(hull, config).run();
  const FacePlaneSet planes = face_planes(hull, true);
  SimplifiedHull result = Simplifier(planes, config, hull.volume(), hull.area()).run();
  const size_t dropped = hull.triangles.size() -
                         [&] {
                           size_t n = 0;
                           for (const auto& p : planes.provenance) n += p.size();
                           return n;
                         }();
  if (dropped > 0) {
    result.warnings.push_back(std::to_string(dropped) +
                              " degenerate hull triangles were filtered");
  }
  return result;
}

SimplifiedHull simplify(const FacePlaneSet& planes, const SimplifyConfig& config) {
  if (config.approx_mode == ApproxMode::Outer) return Simplifier(planes, config).run();
  const IntersectionResult polytope = halfspace_intersection(planes.halfspaces, config.rng_seed);
  if (polytope.status == IntersectionStatus::Empty) {
    throw Error(ErrorCode::Empty, "halfspace intersection is empty");
  }
  if (polytope.status == IntersectionStatus::Unbounded) {
    throw Error(ErrorCode::Unbounded, "halfspace intersection is unbounded");
  }
  return simplify(convex_hull(polytope.mesh.vertices), config);
}

}  // namespace hullpare
