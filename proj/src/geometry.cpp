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

#include "hullpare/geometry.h"

#include "hullpare/error.h"

#include <gmpxx.h>

#include <algorithm>
#include <limits>

namespace hullpare {

namespace {

// Error bound of the straightforward determinant evaluation relative to its
// permanent; see Shewchuk, "Adaptive Precision Floating-Point Arithmetic and
// Fast Robust Geometric Predicates", orient3d bound A.
constexpr double kEpsilon = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kOrient3Bound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

Sign sign_of(int s) {
  return s > 0 ? Sign::Positive : (s < 0 ? Sign::Negative : Sign::Zero);
}

Sign orient3_exact(const Point3& a, const Point3& b, const Point3& c,
                   const Point3& d) {
  const mpq_class ax(a.x), ay(a.y), az(a.z);
  const mpq_class bax = mpq_class(b.x) - ax, bay = mpq_class(b.y) - ay,
                  baz = mpq_class(b.z) - az;
  const mpq_class cax = mpq_class(c.x) - ax, cay = mpq_class(c.y) - ay,
                  caz = mpq_class(c.z) - az;
  const mpq_class dax = mpq_class(d.x) - ax, day = mpq_class(d.y) - ay,
                  daz = mpq_class(d.z) - az;
  const mpq_class det = bax * (cay * daz - caz * day) -
                        bay * (cax * daz - caz * dax) +
                        baz * (cax * day - cay * dax);
  return sign_of(sgn(det));
}

}  // namespace

Sign orient3(const Point3& a, const Point3& b, const Point3& c,
             const Point3& d) {
  const double bax = b.x - a.x, bay = b.y - a.y, baz = b.z - a.z;
  const double cax = c.x - a.x, cay = c.y - a.y, caz = c.z - a.z;
  const double dax = d.x - a.x, day = d.y - a.y, daz = d.z - a.z;

  const double m1 = cay * daz, m2 = caz * day;
  const double m3 = cax * daz, m4 = caz * dax;
  const double m5 = cax * day, m6 = cay * dax;
  const double det = bax * (m1 - m2) - bay * (m3 - m4) + baz * (m5 - m6);
  const double permanent = (std::abs(m1) + std::abs(m2)) * std::abs(bax) +
                           (std::abs(m3) + std::abs(m4)) * std::abs(bay) +
                           (std::abs(m5) + std::abs(m6)) * std::abs(baz);
  const double bound = kOrient3Bound * permanent;
  if (det > bound) return Sign::Positive;
  if (-det > bound) return Sign::Negative;
  return orient3_exact(a, b, c, d);
}

double signed_volume_contribution(std::span<const Point3> face) {
  double sum = 0;
  for (size_t i = 1; i + 1 < face.size(); ++i) {
    sum += dot(face[0], cross(face[i], face[i + 1]));
  }
  return sum / 6.0;
}

Vec3 polygon_area_normal(std::span<const Point3> face) {
  Vec3 n;
  for (size_t i = 1; i + 1 < face.size(); ++i) {
    n += cross(face[i] - face[0], face[i + 1] - face[0]);
  }
  return n * 0.5;
}

double bounding_box_diagonal(std::span<const Point3> points) {
  if (points.empty()) return 0;
  Vec3 lo = points[0], hi = points[0];
  for (const Point3& p : points) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  return norm(hi - lo);
}

std::vector<Point3> PolyhedronMesh::face_points(int face) const {
  std::vector<Point3> pts;
  pts.reserve(faces[face].size());
  for (int v : faces[face]) pts.push_back(vertices[v]);
  return pts;
}

double PolyhedronMesh::volume() const {
  if (vertices.empty()) return 0;
  // Relative to a vertex to keep the fan terms small.
  const Point3 ref = vertices[0];
  double sum = 0;
  std::vector<Point3> pts;
  for (const auto& f : faces) {
    pts.clear();
    for (int v : f) pts.push_back(vertices[v] - ref);
    sum += signed_volume_contribution(pts);
  }
  return sum;
}

double PolyhedronMesh::area() const {
  double sum = 0;
  for (size_t f = 0; f < faces.size(); ++f) {
    sum += norm(polygon_area_normal(face_points(static_cast<int>(f))));
  }
  return sum;
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::CenterOnBoundary: return "CenterOnBoundary";
    case ErrorCode::NearInfinitePrimalVertex: return "NearInfinitePrimalVertex";
    case ErrorCode::DeadVertex: return "DeadVertex";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::MinimalComplex: return "MinimalComplex";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::NonContainment: return "NonContainment";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace hullpare
