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

#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace hullpare {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr bool operator==(const Vec3&) const = default;
};

using Point3 = Vec3;

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Oriented plane; the interior is the set n·x + b <= 0 and n points
/// outward. n is not required to be unit length.
struct Halfspace {
  Vec3 n;
  double b = 0;

  double eval(const Vec3& x) const { return dot(n, x) + b; }
  /// Signed Euclidean distance from the plane, positive outside.
  double distance(const Vec3& x) const { return eval(x) / norm(n); }
  bool operator==(const Halfspace&) const = default;
};

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

/// Sign of det[b - a, c - a, d - a], i.e. positive when d lies on the side
/// of triangle (a, b, c) that its right-handed normal points to. Exact for
/// all finite inputs: a floating-point filter with a certified error bound
/// falls back to rational arithmetic when the filter cannot decide.
Sign orient3(const Point3& a, const Point3& b, const Point3& c,
             const Point3& d);

/// (1/3) (area normal · centroid) of a polygon given counter-clockwise as
/// seen from outside. Evaluated as the fan of tetrahedra from the origin over
/// the polygon's first vertex, so nearly planar polygons are well defined.
double signed_volume_contribution(std::span<const Point3> face);

/// Area-weighted normal (length equals area for planar polygons).
Vec3 polygon_area_normal(std::span<const Point3> face);

double bounding_box_diagonal(std::span<const Point3> points);

/// Closed polyhedral surface with polygonal faces, counter-clockwise from
/// outside.
struct PolyhedronMesh {
  std::vector<Point3> vertices;
  std::vector<std::vector<int>> faces;

  double volume() const;
  double area() const;
  std::vector<Point3> face_points(int face) const;
};

}  // namespace hullpare
