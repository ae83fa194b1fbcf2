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

#include "hullpare/lp.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace hullpare {

namespace {

constexpr double kBoxScale = 1e12;
constexpr double kUnboundedRadius = 1e-3;
constexpr double kViolationTol = 1e-11;
constexpr double kDegenerateRow = 1e-13;
constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

// Constraint row a·x <= b stored as {a_0, ..., a_{D-1}, b}, scaled so that
// max |a_k| == 1.
template <int D>
using Row = std::array<double, D + 1>;
template <int D>
using Vector = std::array<double, D>;

template <int D>
double max_coefficient(const Row<D>& row) {
  double m = 0;
  for (int k = 0; k < D; ++k) m = std::max(m, std::abs(row[k]));
  return m;
}

template <int D>
double activity(const Row<D>& row, const Vector<D>& x, double* magnitude) {
  double s = 0, mag = 0;
  for (int k = 0; k < D; ++k) {
    s += row[k] * x[k];
    mag += std::abs(row[k] * x[k]);
  }
  *magnitude = mag;
  return s;
}

template <int D>
bool violated(const Row<D>& row, const Vector<D>& x) {
  double mag;
  const double s = activity<D>(row, x, &mag);
  return s - row[D] > kViolationTol * (1 + std::abs(row[D])) + 8 * D * kEpsilon * mag;
}

enum class Admit { Keep, Drop, Infeasible };

// Normalizes a row in place. Rows whose coefficients cancelled below
// kDegenerateRow of their pre-cancellation size become the scalar test
// 0 <= b.
template <int D>
Admit normalize(Row<D>& row, double coefficient_scale, double offset_scale) {
  const double m = max_coefficient<D>(row);
  if (m <= kDegenerateRow * coefficient_scale) {
    return row[D] >= -kViolationTol * (1 + offset_scale) ? Admit::Drop
                                                          : Admit::Infeasible;
  }
  for (double& v : row) v /= m;
  return Admit::Keep;
}

template <int D>
std::optional<Vector<D>> solve(const std::vector<Row<D>>& rows,
                               const Vector<D>& objective, double bound) {
  if constexpr (D == 1) {
    double lo = -bound, hi = bound;
    for (const Row<1>& r : rows) {
      const double limit = r[1] / r[0];
      if (r[0] > 0) {
        hi = std::min(hi, limit);
      } else {
        lo = std::max(lo, limit);
      }
    }
    if (lo > hi) {
      if (lo - hi > kViolationTol * (1 + std::abs(lo) + std::abs(hi))) {
        return std::nullopt;
      }
      return Vector<1>{0.5 * (lo + hi)};
    }
    if (objective[0] > 0) return Vector<1>{hi};
    if (objective[0] < 0) return Vector<1>{lo};
    return Vector<1>{std::clamp(0.0, lo, hi)};
  } else {
    Vector<D> x;
    for (int k = 0; k < D; ++k) {
      x[k] = objective[k] > 0 ? bound : (objective[k] < 0 ? -bound : 0.0);
    }
    double objective_scale = 0;
    for (double c : objective) objective_scale = std::max(objective_scale, std::abs(c));

    std::vector<Row<D - 1>> sub;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (!violated<D>(rows[i], x)) continue;

      // The new optimum lies on a_i·x = b_i; eliminate the variable with the
      // largest coefficient and recurse over the earlier constraints.
      const Row<D>& h = rows[i];
      int j = 0;
      for (int k = 1; k < D; ++k) {
        if (std::abs(h[k]) > std::abs(h[j])) j = k;
      }
      sub.clear();
      bool infeasible = false;
      auto admit = [&](const Row<D>& r) {
        Row<D - 1> out;
        const double f = r[j] / h[j];
        double coefficient_scale = 0;
        int m = 0;
        for (int k = 0; k < D; ++k) {
          if (k == j) continue;
          out[m++] = r[k] - f * h[k];
          coefficient_scale = std::max(coefficient_scale, std::abs(r[k]) + std::abs(f * h[k]));
        }
        out[D - 1] = r[D] - f * h[D];
        switch (normalize<D - 1>(out, coefficient_scale, std::abs(r[D]) + std::abs(f * h[D]))) {
          case Admit::Keep:
            sub.push_back(out);
            break;
          case Admit::Drop:
            break;
          case Admit::Infeasible:
            infeasible = true;
            break;
        }
      };
      Row<D> upper{}, lower{};
      upper[j] = 1;
      upper[D] = bound;
      lower[j] = -1;
      lower[D] = bound;
      admit(upper);
      admit(lower);
      for (size_t p = 0; p < i && !infeasible; ++p) admit(rows[p]);
      if (infeasible) return std::nullopt;

      Vector<D - 1> sub_objective;
      {
        const double f = objective[j] / h[j];
        int m = 0;
        for (int k = 0; k < D; ++k) {
          if (k == j) continue;
          double c = objective[k] - f * h[k];
          if (std::abs(c) <= 1e-14 * objective_scale) c = 0;
          sub_objective[m++] = c;
        }
      }
      auto reduced = solve<D - 1>(sub, sub_objective, bound);
      if (!reduced) return std::nullopt;

      double rest = h[D];
      int m = 0;
      for (int k = 0; k < D; ++k) {
        if (k == j) continue;
        x[k] = (*reduced)[m++];
        rest -= h[k] * x[k];
      }
      x[j] = rest / h[j];
    }
    return x;
  }
}

template <int D>
std::optional<Vector<D>> solve_shuffled(std::vector<Row<D>> rows,
                                        const Vector<D>& objective,
                                        double bound, std::uint64_t seed) {
  std::vector<Row<D>> kept;
  kept.reserve(rows.size());
  for (Row<D>& r : rows) {
    switch (normalize<D>(r, 1.0, std::abs(r[D]))) {
      case Admit::Keep:
        kept.push_back(r);
        break;
      case Admit::Drop:
        break;
      case Admit::Infeasible:
        return std::nullopt;
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(kept.begin(), kept.end(), rng);
  return solve<D>(kept, objective, bound);
}

double input_scale(std::span<const Halfspace> halfspaces) {
  double s = 1;
  for (const Halfspace& h : halfspaces) {
    const double len = norm(h.n);
    if (len > 0) s = std::max(s, 1 + std::abs(h.b) / len);
  }
  return s;
}

}  // namespace

LpOutcome feasible_point(std::span<const Halfspace> halfspaces,
                         std::uint64_t seed) {
  std::vector<Row<3>> rows;
  rows.reserve(halfspaces.size());
  for (const Halfspace& h : halfspaces) {
    rows.push_back({h.n.x, h.n.y, h.n.z, -h.b});
  }
  const double bound = kBoxScale * input_scale(halfspaces);
  auto x = solve_shuffled<3>(std::move(rows), {0, 0, 0}, bound, seed);
  if (!x) return {LpStatus::Infeasible, {}};
  return {LpStatus::Feasible, {(*x)[0], (*x)[1], (*x)[2]}};
}

ChebyshevOutcome chebyshev_center(std::span<const Halfspace> halfspaces,
                                  std::uint64_t seed) {
  std::vector<Row<4>> rows;
  rows.reserve(halfspaces.size() + 1);
  for (const Halfspace& h : halfspaces) {
    rows.push_back({h.n.x, h.n.y, h.n.z, norm(h.n), -h.b});
  }
  rows.push_back({0, 0, 0, -1, 0});  // r >= 0
  const double bound = kBoxScale * input_scale(halfspaces);
  auto x = solve_shuffled<4>(std::move(rows), {0, 0, 0, 1}, bound, seed);
  if (!x) return {LpStatus::Infeasible, {}};
  const double r = (*x)[3];
  if (r >= kUnboundedRadius * bound) return {LpStatus::Unbounded, {}};
  return {LpStatus::Feasible, {{(*x)[0], (*x)[1], (*x)[2]}, std::max(r, 0.0)}};
}

}  // namespace hullpare
