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

#include <vector>

#include "centerout/common.hpp"

namespace centerout {

enum class LpStatus { kOptimal, kInfeasible };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  Vectord solution;  // size = number of structural variables
};

/// Two-phase tableau simplex for  min c'x  s.t.  A x = b, x >= 0.
/// Bland's rule throughout, so the pivot sequence is deterministic and
/// cycle-free. Intended for instances with few rows (convex-hull weights).
inline LpResult solve_equality_lp(const Eigen::MatrixXd& A, const Vectord& b, const Vectord& c,
                                  double tol = 1e-11) {
  const Index m = A.rows();
  const Index n = A.cols();
  if (b.size() != m || c.size() != n) throw DomainError("solve_equality_lp: shape mismatch");

  // Tableau over structural + artificial columns, with rhs last.
  Eigen::MatrixXd t(m, n + m + 1);
  t.setZero();
  t.block(0, 0, m, n) = A;
  t.col(n + m) = b;
  for (Index i = 0; i < m; ++i) {
    if (t(i, n + m) < 0) t.row(i) = -t.row(i);
    t(i, n + i) = 1.0;
  }
  std::vector<Index> basis(m);
  for (Index i = 0; i < m; ++i) basis[i] = n + i;

  const auto pivot = [&](Index row, Index col) {
    t.row(row) /= t(row, col);
    for (Index i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = t(i, col);
      if (f != 0.0) t.row(i) -= f * t.row(row);
    }
    basis[row] = col;
  };

  const auto run_phase = [&](const Vectord& cost, Index usable_cols) -> double {
    for (long iter = 0;; ++iter) {
      if (iter > 50000) throw ConvergenceError("solve_equality_lp: iteration cap reached");
      // Reduced costs under the current basis (Bland: first negative wins).
      Index enter = -1;
      for (Index j = 0; j < usable_cols; ++j) {
        double red = cost[j];
        for (Index i = 0; i < m; ++i) red -= cost[basis[i]] * t(i, j);
        if (red < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) {
        double obj = 0.0;
        for (Index i = 0; i < m; ++i) obj += cost[basis[i]] * t(i, n + m);
        return obj;
      }
      Index leave = -1;
      double best_ratio = 0.0;
      for (Index i = 0; i < m; ++i) {
        if (t(i, enter) > tol) {
          const double ratio = t(i, n + m) / t(i, enter);
          if (leave < 0 || ratio < best_ratio - 1e-15 ||
              (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) throw ConvergenceError("solve_equality_lp: unbounded phase objective");
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the artificial mass.
  Vectord phase1_cost = Vectord::Zero(n + m);
  phase1_cost.tail(m).setOnes();
  const double infeasibility = run_phase(phase1_cost, n + m);
  if (infeasibility > 1e-8 * (1.0 + b.cwiseAbs().maxCoeff())) {
    return LpResult{LpStatus::kInfeasible, 0.0, Vectord()};
  }
  // Drive any residual artificial out of the basis; a zero row is redundant.
  for (Index i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    Index col = -1;
    for (Index j = 0; j < n; ++j)
      if (std::abs(t(i, j)) > tol) {
        col = j;
        break;
      }
    if (col >= 0) pivot(i, col);
  }

  Vectord phase2_cost = Vectord::Zero(n + m);
  phase2_cost.head(n) = c;
  // Block re-entry of artificial columns.
  for (Index i = 0; i < m; ++i)
    if (basis[i] >= n) t.row(i).segment(n, m).setZero();
  Vectord saved = phase2_cost;
  const double objective = [&] {
    // Artificials barred from entering by restricting the scan width.
    return run_phase(saved, n);
  }();

  LpResult out;
  out.status = LpStatus::kOptimal;
  out.objective = objective;
  out.solution = Vectord::Zero(n);
  for (Index i = 0; i < m; ++i)
    if (basis[i] < n) out.solution[basis[i]] = t(i, n + m);
  return out;
}

/// Feasibility of  A x = b, x >= 0  (phase 1 only).
inline bool equality_lp_feasible(const Eigen::MatrixXd& A, const Vectord& b, double tol = 1e-11) {
  return solve_equality_lp(A, b, Vectord::Zero(A.cols()), tol).status == LpStatus::kOptimal;
}

}  // namespace centerout
