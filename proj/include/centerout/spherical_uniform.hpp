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
#include <cmath>

#include "centerout/common.hpp"
#include "centerout/convex_box.hpp"
#include "centerout/quadrature.hpp"
#include "centerout/rng.hpp"

namespace centerout {

enum class MassMethod { kQuadrature, kMonteCarlo };

struct BoxMass {
  double value = 0.0;
  double error = 0.0;  // quadrature: Richardson estimate; Monte Carlo: 99% CI half-width
};

struct DoublingRatio {
  double ratio = 0.0;
  BoxMass outer;  // mass of S_r
  BoxMass inner;  // mass of (1/2) S_r
};

namespace detail {

/// Length of {r >= 0 : r * dir in box}. dir need not be normalized in d = 1.
inline double ray_exit_length(const ConvexBoxd& box, const Vectord& dir) {
  double rlo = 0.0, rhi = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < dir.size(); ++k) {
    const double dk = dir[k];
    if (std::abs(dk) < 1e-300) {
      if (box.lower[k] > 0.0 || box.upper[k] < 0.0) return 0.0;
      continue;
    }
    double t1 = box.lower[k] / dk, t2 = box.upper[k] / dk;
    if (t1 > t2) std::swap(t1, t2);
    rlo = std::max(rlo, t1);
    rhi = std::min(rhi, t2);
  }
  return std::max(0.0, rhi - rlo);
}

// Quadrant angle range on the circle for sign pattern (sx, sy).
inline void quadrant_angles(int sx, int sy, double& a, double& b) {
  if (sx > 0 && sy > 0) { a = 0.0; b = 0.5 * M_PI; }
  else if (sx < 0 && sy > 0) { a = 0.5 * M_PI; b = M_PI; }
  else if (sx < 0 && sy < 0) { a = M_PI; b = 1.5 * M_PI; }
  else { a = 1.5 * M_PI; b = 2.0 * M_PI; }
}

// Mass of a box having the origin as one of its corners, integrated in polar
// coordinates over the exact orthant patch; the radial direction integrates
// to the ray exit length, so the near-origin singularity never appears.
inline QuadratureResult corner_box_mass(const ConvexBoxd& box, double a_d, double tol,
                                        long cell_budget) {
  const int d = box.dim();
  const auto sign_of_axis = [&](Index k) { return box.upper[k] > 0.0 ? 1 : -1; };
  if (d == 2) {
    double a, b;
    quadrant_angles(sign_of_axis(0), sign_of_axis(1), a, b);
    auto f = [&](double theta) {
      Vectord dir(2);
      dir << std::cos(theta), std::sin(theta);
      return ray_exit_length(box, dir);
    };
    QuadratureResult q = adaptive_simpson_1d(f, a, b, tol * a_d, 48, cell_budget);
    q.value /= a_d;
    q.error /= a_d;
    return q;
  }
  if (d == 3) {
    double a, b;
    quadrant_angles(sign_of_axis(0), sign_of_axis(1), a, b);
    const double z0 = sign_of_axis(2) > 0 ? 0.0 : -1.0;
    const double z1 = z0 + 1.0;
    auto f = [&](double z, double phi) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vectord dir(3);
      dir << s * std::cos(phi), s * std::sin(phi), z;
      return ray_exit_length(box, dir);
    };
    QuadratureResult q = adaptive_simpson_2d(f, z0, z1, a, b, tol * a_d, 30, cell_budget);
    q.value /= a_d;
    q.error /= a_d;
    return q;
  }
  throw DomainError("box_mass: quadrature near the origin supports d <= 3; use monte_carlo");
}

}  // namespace detail

/// The spherical uniform U_d on the open unit ball: an independent uniform
/// direction and a uniform distance to the origin. Density
/// u_d(x) = 1 / (a_d |x|^{d-1}) with a_d = 2 pi^{d/2} / Gamma(d/2).
template <typename Scalar = double>
class SphericalUniform {
 public:
  explicit SphericalUniform(int d)
      : d_(d), a_d_(sphere_surface_constant<Scalar>(d)) {
    if (d < 1) throw DomainError("SphericalUniform: dimension must be >= 1");
  }

  int dim() const { return d_; }
  Scalar surface_constant() const { return a_d_; }

  template <typename Derived>
  Scalar density(const Eigen::MatrixBase<Derived>& u) const {
    if (u.size() != d_) throw DomainError("density: point dimension mismatch");
    const Scalar r = u.norm();
    if (!(r > Scalar(0)) || !(r < Scalar(1)))
      throw DomainError("density: defined only on the punctured open unit ball");
    return Scalar(1) / (a_d_ * std::pow(r, Scalar(d_ - 1)));
  }

  /// n i.i.d. draws R * S, one point per row. Deterministic given seed.
  PointMatrix<Scalar> sample(Index n, std::uint64_t seed) const {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    Rng rng(seed);
    PointMatrix<Scalar> pts(n, d_);
    for (Index i = 0; i < n; ++i) {
      const Scalar radius = Scalar(rng.uniform01());
      pts.row(i) = (radius * sample_sphere_direction<Scalar>(rng, d_)).transpose();
    }
    return pts;
  }

  /// U_d(r B_d) = r, exactly.
  Scalar ball_mass(Scalar r) const {
    if (!(r >= Scalar(0) && r <= Scalar(1)))
      throw DomainError("ball_mass: radius must lie in [0, 1]");
    return r;
  }

  /// Integral of u_d over the box, which must lie inside the open unit ball.
  BoxMass box_mass(const ConvexBox<Scalar>& box, MassMethod method, long budget = 1000000,
                   std::uint64_t seed = 0) const {
    box.validate();
    if (box.dim() != d_) throw DomainError("box_mass: box dimension mismatch");
    if (!(box.max_corner_norm() < Scalar(1)))
      throw DomainError("box_mass: box is not contained in the open unit ball");
    if (method == MassMethod::kMonteCarlo) return box_mass_monte_carlo(box, budget, seed);
    return box_mass_quadrature(box, budget);
  }

  /// S_r = [-1/12, 7/12] x [-r, r]^{d-1}, the rectangle whose center of mass
  /// is (1/4, 0, ..., 0).
  static ConvexBox<Scalar> doubling_box(int d, Scalar r) {
    if (d < 1) throw DomainError("doubling_box: dimension must be >= 1");
    if (!(r > Scalar(0))) throw DomainError("doubling_box: r must be positive");
    Vector<Scalar> lo(d), hi(d);
    lo[0] = Scalar(-1.0 / 12.0);
    hi[0] = Scalar(7.0 / 12.0);
    for (int k = 1; k < d; ++k) {
      lo[k] = -r;
      hi[k] = r;
    }
    return ConvexBox<Scalar>(lo, hi);
  }

  /// U_d(S_r) / U_d((1/2) S_r), the half-dilation taken about the center of
  /// mass. Grows like r^{2-d}, which rules the doubling property out for d > 2.
  DoublingRatio doubling_ratio(Scalar r, MassMethod method = MassMethod::kQuadrature,
                               long budget = 1000000, std::uint64_t seed = 0) const {
    const ConvexBox<Scalar> outer = doubling_box(d_, r);
    if (!(outer.max_corner_norm() < Scalar(1)))
      throw DomainError("doubling_ratio: S_r escapes the unit ball; reduce r");
    const ConvexBox<Scalar> inner = outer.half_dilation();
    DoublingRatio out;
    out.outer = box_mass(outer, method, budget, derive_seed(seed, 101));
    out.inner = box_mass(inner, method, budget, derive_seed(seed, 102));
    out.ratio = out.outer.value / out.inner.value;
    return out;
  }

 private:
  BoxMass box_mass_monte_carlo(const ConvexBox<Scalar>& box, long budget,
                               std::uint64_t seed) const {
    if (budget < 1) throw DomainError("box_mass: monte_carlo budget must be >= 1");
    constexpr long kChunk = 65536;
    long hits = 0;
    Vector<Scalar> x(d_);
    for (long start = 0, chunk_id = 0; start < budget; start += kChunk, ++chunk_id) {
      const long count = std::min(kChunk, budget - start);
      Rng rng(derive_seed(seed, 7, static_cast<std::uint64_t>(chunk_id)));
      for (long i = 0; i < count; ++i) {
        const Scalar radius = Scalar(rng.uniform01());
        x = radius * sample_sphere_direction<Scalar>(rng, d_);
        if (box.contains(x)) ++hits;
      }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(budget);
    BoxMass out;
    out.value = p;
    // 99% normal CI half-width plus a one-sample floor.
    out.error = 2.5758293035489004 * std::sqrt(std::max(p * (1.0 - p), 0.0) / budget) +
                1.0 / static_cast<double>(budget);
    return out;
  }

  BoxMass box_mass_quadrature(const ConvexBox<Scalar>& box, long cell_budget) const {
    ConvexBoxd b(box.lower.template cast<double>(), box.upper.template cast<double>());
    const double a_d = static_cast<double>(a_d_);
    const double tol = 1e-10;
    QuadratureResult total;
    if (d_ == 1) {
      // u_1 is the constant 1/2.
      return BoxMass{0.5 * (b.upper[0] - b.lower[0]), 0.0};
    }
    if (b.distance_to_origin() > 0.0) {
      auto f = [&](const Vectord& x) { return 1.0 / (a_d * std::pow(x.norm(), d_ - 1)); };
      total = detail::adaptive_box(f, b.lower, b.upper, tol, 60, cell_budget);
    } else {
      // Split at the coordinate planes; every piece then has the origin as a
      // corner and integrates cleanly in polar coordinates.
      std::vector<ConvexBoxd> pieces{b};
      for (int k = 0; k < d_; ++k) {
        std::vector<ConvexBoxd> next;
        for (const ConvexBoxd& p : pieces) {
          if (p.lower[k] < 0.0 && 0.0 < p.upper[k]) {
            ConvexBoxd left = p, right = p;
            left.upper[k] = 0.0;
            right.lower[k] = 0.0;
            next.push_back(left);
            next.push_back(right);
          } else {
            next.push_back(p);
          }
        }
        pieces = std::move(next);
      }
      for (const ConvexBoxd& p : pieces) {
        const QuadratureResult q =
            detail::corner_box_mass(p, a_d, tol / static_cast<double>(pieces.size()), cell_budget);
        total.value += q.value;
        total.error += q.error;
        total.cells += q.cells;
      }
    }
    return BoxMass{total.value, total.error};
  }

  int d_;
  Scalar a_d_;
};

using SphericalUniformd = SphericalUniform<double>;

}  // namespace centerout
