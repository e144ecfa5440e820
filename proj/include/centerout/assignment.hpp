/*
   Copyright 2026 The centerout authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "centerout/common.hpp"
#include "centerout/rng.hpp"

namespace centerout {

/// Exact optimal bijection under squared Euclidean cost, with the dual
/// potentials of the underlying linear program.
struct AssignmentResult {
  std::vector<Index> sigma;  // source row i -> target row sigma[i]
  Vectord row_duals;         // u_i with c_ij - u_i - v_j >= 0
  Vectord col_duals;         // v_j, equality on matched pairs
  double total_cost = 0.0;
  bool had_duplicate_sources = false;
};

namespace detail {

inline bool has_duplicate_rows(const PointMatrixd& pts) {
  std::vector<Index> order(pts.rows());
  std::iota(order.begin(), order.end(), Index(0));
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Index k = 0; k < pts.cols(); ++k) {
      if (pts(a, k) != pts(b, k)) return pts(a, k) < pts(b, k);
    }
    return false;
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (pts.row(order[i]) == pts.row(order[i - 1])) return true;
  return false;
}

}  // namespace detail

/// Jonker-Volgenant shortest augmenting path on the dense squared-distance
/// matrix. O(n^3); ties resolved by lowest index, so the permutation is a
/// deterministic function of the inputs.
inline AssignmentResult solve_assignment(const PointMatrixd& source, const PointMatrixd& target) {
  if (source.rows() != target.rows())
    throw DomainError("solve_assignment: source and target must have the same number of points");
  if (source.cols() != target.cols())
    throw DomainError("solve_assignment: dimension mismatch");
  const Index n = source.rows();
  if (n == 0) throw DomainError("solve_assignment: empty instance");

  Eigen::MatrixXd cost(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) cost(i, j) = (source.row(i) - target.row(j)).squaredNorm();

  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<Index> p(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = p[j0];
      Index j1 = 0;
      double delta = kInf;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentResult out;
  out.sigma.assign(n, -1);
  for (Index j = 1; j <= n; ++j)
    if (p[j] != 0) out.sigma[p[j] - 1] = j - 1;
  out.row_duals.resize(n);
  out.col_duals.resize(n);
  for (Index i = 0; i < n; ++i) out.row_duals[i] = u[i + 1];
  for (Index j = 0; j < n; ++j) out.col_duals[j] = v[j + 1];
  out.total_cost = 0.0;
  for (Index i = 0; i < n; ++i) out.total_cost += cost(i, out.sigma[i]);
  out.had_duplicate_sources = detail::has_duplicate_rows(source);
  return out;
}

/// Dual feasibility plus complementary slackness, both to relative tolerance.
inline bool verify_optimality(const AssignmentResult& result, const PointMatrixd& source,
                              const PointMatrixd& target, double rel_tol = 1e-9) {
  const Index n = source.rows();
  if (static_cast<Index>(result.sigma.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (Index i = 0; i < n; ++i) {
    if (result.sigma[i] < 0 || result.sigma[i] >= n || seen[result.sigma[i]]) return false;
    seen[result.sigma[i]] = 1;
  }
  double scale = 1.0;
  for (Index i = 0; i < n; ++i)
    scale = std::max(scale, source.row(i).squaredNorm() + target.row(i).squaredNorm());
  const double tol = rel_tol * scale;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double reduced =
          (source.row(i) - target.row(j)).squaredNorm() - result.row_duals[i] - result.col_duals[j];
      if (reduced < -tol) return false;
      if (j == result.sigma[i] && std::abs(reduced) > tol) return false;
    }
  }
  return true;
}

struct MonotonicityCheck {
  bool pass = false;
  double worst_slack = 0.0;  // most negative cycle slack encountered
};

namespace detail {

inline double cycle_slack(const PointMatrixd& source, const PointMatrixd& target,
                          const std::vector<Index>& sigma, const std::vector<Index>& cycle) {
  // Optimal couplings maximize sum <x_i, y_sigma(i)>; any cyclic reassignment
  // of the targets along `cycle` must not improve it.
  double kept = 0.0, swapped = 0.0;
  const std::size_t k = cycle.size();
  for (std::size_t t = 0; t < k; ++t) {
    const Index i = cycle[t];
    const Index inext = cycle[(t + 1) % k];
    kept += source.row(i).dot(target.row(sigma[i]));
    swapped += source.row(i).dot(target.row(sigma[inext]));
  }
  return kept - swapped;
}

}  // namespace detail

/// Samples `trials` random cycles of length 2..k_max and reports the minimal
/// slack of the cyclical-monotonicity inequality.
inline MonotonicityCheck cyclical_monotonicity_check(const PointMatrixd& source,
                                                     const PointMatrixd& target,
                                                     const std::vector<Index>& sigma, int k_max,
                                                     long trials, std::uint64_t seed,
                                                     double tol = 1e-9) {
  const Index n = source.rows();
  MonotonicityCheck out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  if (n < 2 || k_max < 2) {
    out.pass = true;
    out.worst_slack = 0.0;
    return out;
  }
  Rng rng(seed);
  std::vector<Index> pool(n);
  for (long t = 0; t < trials; ++t) {
    const int k = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(
                                           std::min<Index>(k_max, n) - 1));
    std::iota(pool.begin(), pool.end(), Index(0));
    // partial Fisher-Yates for the first k slots
    for (int s = 0; s < k; ++s) {
      const Index r = s + static_cast<Index>(rng.next_u64() % static_cast<std::uint64_t>(n - s));
      std::swap(pool[s], pool[r]);
    }
    std::vector<Index> cycle(pool.begin(), pool.begin() + k);
    out.worst_slack = std::min(out.worst_slack, detail::cycle_slack(source, target, sigma, cycle));
  }
  if (trials == 0) out.worst_slack = 0.0;
  double scale = 1.0;
  for (Index i = 0; i < n; ++i) scale = std::max(scale, source.row(i).norm());
  out.pass = out.worst_slack >= -tol * scale;
  return out;
}

/// All C(n,2) transpositions.
inline MonotonicityCheck two_cycle_exhaustive_check(const PointMatrixd& source,
                                                    const PointMatrixd& target,
                                                    const std::vector<Index>& sigma,
                                                    double tol = 1e-9) {
  const Index n = source.rows();
  MonotonicityCheck out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      out.worst_slack =
          std::min(out.worst_slack, detail::cycle_slack(source, target, sigma, {a, b}));
  if (n < 2) out.worst_slack = 0.0;
  double scale = 1.0;
  for (Index i = 0; i < n; ++i) scale = std::max(scale, source.row(i).norm());
  out.pass = out.worst_slack >= -tol * scale;
  return out;
}

}  // namespace centerout
