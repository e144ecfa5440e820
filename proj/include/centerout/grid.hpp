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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "centerout/assignment.hpp"
#include "centerout/common.hpp"
#include "centerout/rng.hpp"
#include "centerout/spherical_uniform.hpp"

namespace centerout {

namespace detail {

/// Haar-ish random rotation; the zero seed is reserved for the identity.
inline Eigen::MatrixXd rotation_matrix(int d, std::uint64_t seed) {
  if (seed == 0) return Eigen::MatrixXd::Identity(d, d);
  Rng rng(derive_seed(seed, 13));
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(d - 1) = -q.col(d - 1);
  return q;
}

/// Deterministic low-discrepancy direction set on S^{d-1}.
inline PointMatrixd direction_set(int d, Index nS, std::uint64_t rotation_seed) {
  PointMatrixd dirs(nS, d);
  if (d == 1) {
    for (Index s = 0; s < nS; ++s) dirs(s, 0) = (s % 2 == 0) ? 1.0 : -1.0;
    return dirs;
  }
  if (d == 2) {
    double offset = 0.0;
    if (rotation_seed != 0) {
      Rng rng(derive_seed(rotation_seed, 13));
      offset = 2.0 * M_PI * rng.uniform01();
    }
    for (Index s = 0; s < nS; ++s) {
      const double theta = offset + 2.0 * M_PI * static_cast<double>(s) / static_cast<double>(nS);
      dirs(s, 0) = std::cos(theta);
      dirs(s, 1) = std::sin(theta);
    }
    return dirs;
  }
  if (d == 3) {
    // Fibonacci spiral.
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (Index s = 0; s < nS; ++s) {
      const double z = 1.0 - (2.0 * s + 1.0) / static_cast<double>(nS);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = 2.0 * M_PI * std::fmod(static_cast<double>(s) * golden, 1.0);
      dirs(s, 0) = rho * std::cos(phi);
      dirs(s, 1) = rho * std::sin(phi);
      dirs(s, 2) = z;
    }
  } else {
    // Halton points pushed through the inverse normal CDF, then normalized.
    for (Index s = 0; s < nS; ++s) {
      Vectord g(d);
      for (int k = 0; k < d; ++k)
        g[k] = inverse_normal_cdf(std::min(1.0 - 1e-12, std::max(1e-12, halton(s, nth_prime(k)))));
      if (g.norm() < 1e-12) g[0] = 1.0;
      dirs.row(s) = (g / g.norm()).transpose();
    }
  }
  const Eigen::MatrixXd rot = rotation_matrix(d, rotation_seed);
  dirs = dirs * rot.transpose();
  return dirs;
}

}  // namespace detail

/// Weighted discrete approximation of U_d: nR rings of radii j/(nR+1) with a
/// common direction set of size nS, plus n0 logical copies of the origin
/// collapsed into a single atom of weight n0/n, where n = nR*nS + n0.
struct SphericalGrid {
  int d = 0;
  Index n_rings = 0;
  Index n_directions = 0;
  Index n_origin = 0;
  std::uint64_t rotation_seed = 0;
  PointMatrixd points;  // (n_rings*n_directions + [n_origin>0]) x d, ring-major
  Vectord weights;

  Index total_size() const { return n_rings * n_directions + n_origin; }
  bool has_origin_atom() const { return n_origin > 0; }

  double ring_radius(Index j) const {  // 1-based ring index
    return static_cast<double>(j) / static_cast<double>(n_rings + 1);
  }

  /// Number of assignment slots: the origin atom counts n_origin times.
  Index slot_count() const { return total_size(); }

  /// Point-row index backing a slot.
  Index slot_point_row(Index slot) const {
    const Index regular = n_rings * n_directions;
    if (slot < regular) return slot;
    return regular;  // origin row
  }

  /// Slots expanded to one point per row; duplicates the origin n0 times.
  PointMatrixd slot_points() const {
    PointMatrixd out(slot_count(), d);
    for (Index s = 0; s < slot_count(); ++s) out.row(s) = points.row(slot_point_row(s));
    return out;
  }
};

inline SphericalGrid build_grid(int d, Index n_rings, Index n_directions, Index n_origin,
                                std::uint64_t rotation_seed) {
  if (d < 1) throw DomainError("build_grid: dimension must be >= 1");
  if (n_rings < 1 || n_directions < 1 || n_origin < 0)
    throw DomainError("build_grid: need n_rings >= 1, n_directions >= 1, n_origin >= 0");
  SphericalGrid grid;
  grid.d = d;
  grid.n_rings = n_rings;
  grid.n_directions = n_directions;
  grid.n_origin = n_origin;
  grid.rotation_seed = rotation_seed;
  const PointMatrixd dirs = detail::direction_set(d, n_directions, rotation_seed);
  const Index n = n_rings * n_directions + n_origin;
  const Index rows = n_rings * n_directions + (n_origin > 0 ? 1 : 0);
  grid.points.resize(rows, d);
  grid.weights.resize(rows);
  for (Index j = 1; j <= n_rings; ++j) {
    const double r = grid.ring_radius(j);
    for (Index s = 0; s < n_directions; ++s) {
      const Index row = (j - 1) * n_directions + s;
      grid.points.row(row) = r * dirs.row(s);
      grid.weights[row] = 1.0 / static_cast<double>(n);
    }
  }
  if (n_origin > 0) {
    grid.points.row(rows - 1).setZero();
    grid.weights[rows - 1] = static_cast<double>(n_origin) / static_cast<double>(n);
  }
  return grid;
}

/// Exact W2 between the grid measure and the uniform empirical measure on
/// `samples`; samples.rows() must be a multiple of slot_count().
inline double wasserstein2_to_points(const SphericalGrid& grid, const PointMatrixd& samples) {
  const Index n = grid.slot_count();
  if (samples.rows() < n || samples.rows() % n != 0)
    throw DomainError("wasserstein2_to_points: sample count must be a positive multiple of n");
  const Index k = samples.rows() / n;
  PointMatrixd slots(samples.rows(), grid.d);
  for (Index s = 0; s < n; ++s)
    for (Index c = 0; c < k; ++c) slots.row(s * k + c) = grid.points.row(grid.slot_point_row(s));
  const AssignmentResult res = solve_assignment(samples, slots);
  return std::sqrt(res.total_cost / static_cast<double>(samples.rows()));
}

/// Monte-Carlo W2 diagnostic against U_d itself. Decreases under refinement.
inline double weak_convergence_diagnostic(const SphericalGrid& grid, Index budget,
                                          std::uint64_t seed) {
  const Index n = grid.slot_count();
  if (budget < n) throw DomainError("weak_convergence_diagnostic: budget must be >= grid size");
  const Index m = (budget / n) * n;
  const SphericalUniformd ud(grid.d);
  return wasserstein2_to_points(grid, ud.sample(m, seed));
}

inline nlohmann::json grid_to_json(const SphericalGrid& grid) {
  nlohmann::json j;
  j["version"] = 1;
  j["d"] = grid.d;
  j["n_rings"] = grid.n_rings;
  j["n_directions"] = grid.n_directions;
  j["n_origin"] = grid.n_origin;
  j["rotation_seed"] = grid.rotation_seed;
  std::vector<std::vector<double>> pts(grid.points.rows());
  for (Index i = 0; i < grid.points.rows(); ++i) {
    pts[i].resize(grid.d);
    for (int k = 0; k < grid.d; ++k) pts[i][k] = grid.points(i, k);
  }
  j["points"] = pts;
  j["weights"] = std::vector<double>(grid.weights.data(), grid.weights.data() + grid.weights.size());
  return j;
}

inline SphericalGrid grid_from_json(const nlohmann::json& j) {
  SphericalGrid grid;
  grid.d = j.at("d").get<int>();
  grid.n_rings = j.at("n_rings").get<Index>();
  grid.n_directions = j.at("n_directions").get<Index>();
  grid.n_origin = j.at("n_origin").get<Index>();
  grid.rotation_seed = j.at("rotation_seed").get<std::uint64_t>();
  const auto& pts = j.at("points");
  const auto& w = j.at("weights");
  grid.points.resize(static_cast<Index>(pts.size()), grid.d);
  grid.weights.resize(static_cast<Index>(w.size()));
  for (Index i = 0; i < grid.points.rows(); ++i)
    for (int k = 0; k < grid.d; ++k) grid.points(i, k) = pts.at(i).at(k).get<double>();
  for (Index i = 0; i < grid.weights.size(); ++i) grid.weights[i] = w.at(i).get<double>();
  const Index rows = grid.n_rings * grid.n_directions + (grid.n_origin > 0 ? 1 : 0);
  if (grid.points.rows() != rows || grid.weights.size() != rows)
    throw DomainError("grid_from_json: inconsistent sizes");
  return grid;
}

}  // namespace centerout
