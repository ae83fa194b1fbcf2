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
#include <span>

#include "hullpare/geometry.h"

namespace hullpare {

enum class LpStatus { Feasible, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Point3 witness;  // valid when status == Feasible
};

struct ChebyshevResult {
  Point3 center;
  double radius = 0;
};

struct ChebyshevOutcome {
  LpStatus status = LpStatus::Infeasible;
  ChebyshevResult result;  // valid when status == Feasible
};

/// Finds a point in the intersection of the halfspaces, or reports that the
/// intersection is empty. Seidel's randomized incremental algorithm in three
/// variables: expected linear time in the number of halfspaces. The seed fixes
/// the insertion order.
LpOutcome feasible_point(std::span<const Halfspace> halfspaces,
                         std::uint64_t seed = 0);

/// Center and radius of the largest ball inside the intersection, solved as a
/// four-variable LP over (center, radius). Reports Unbounded when the radius
/// reaches 1e9 times the input scale inside a box of 1e12 times that scale.
ChebyshevOutcome chebyshev_center(std::span<const Halfspace> halfspaces,
                                  std::uint64_t seed = 0);

}  // namespace hullpare
