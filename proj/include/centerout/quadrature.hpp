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
#include <cmath>
#include <functional>
#include <vector>

#include "centerout/common.hpp"
#include "centerout/convex_box.hpp"

namespace centerout {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // accumulated Richardson error estimate
  long cells = 0;      // evaluated cells
};

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return (h / 6.0) * (fa + 4.0 * fm + fb);
}

// Adaptive Simpson on [a, b]; local acceptance shares the tolerance by width.
template <typename F>
void adaptive_simpson_1d_rec(const F& f, double a, double m, double b, double fa, double fm,
                             double fb, double whole, double tol, int depth, int max_depth,
                             long cell_budget, QuadratureResult& out) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  ++out.cells;
  if (out.cells > cell_budget)
    throw ConvergenceError("adaptive_simpson_1d: cell budget exhausted");
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
    out.value += left + right + delta / 15.0;
    out.error += std::abs(delta) / 15.0;
    return;
  }
  adaptive_simpson_1d_rec(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth,
                          cell_budget, out);
  adaptive_simpson_1d_rec(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth,
                          cell_budget, out);
}

template <typename F>
QuadratureResult adaptive_simpson_1d(const F& f, double a, double b, double tol,
                                     int max_depth = 48, long cell_budget = 1L << 22) {
  QuadratureResult out;
  if (a == b) return out;
  // Seed with a few panels so narrow features are not skipped at the root.
  const int panels = 8;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double pa = a + p * h, pb = pa + h, pm = 0.5 * (pa + pb);
    const double fa = f(pa), fm = f(pm), fb = f(pb);
    adaptive_simpson_1d_rec(f, pa, pm, pb, fa, fm, fb, simpson(fa, fm, fb, h), tol / panels, 0,
                            max_depth, cell_budget, out);
  }
  return out;
}

// Tensor 3x3 Simpson over a rectangle.
template <typename F>
double simpson_2d(const F& f, double ax, double bx, double ay, double by) {
  const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
  const double wx = bx - ax, wy = by - ay;
  const double s = f(ax, ay) + f(bx, ay) + f(ax, by) + f(bx, by) +
                   4.0 * (f(mx, ay) + f(mx, by) + f(ax, my) + f(bx, my)) + 16.0 * f(mx, my);
  return s * wx * wy / 36.0;
}

template <typename F>
void adaptive_simpson_2d_rec(const F& f, double ax, double bx, double ay, double by, double whole,
                             double tol, int depth, int max_depth, long cell_budget,
                             QuadratureResult& out) {
  const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
  const double q00 = simpson_2d(f, ax, mx, ay, my);
  const double q10 = simpson_2d(f, mx, bx, ay, my);
  const double q01 = simpson_2d(f, ax, mx, my, by);
  const double q11 = simpson_2d(f, mx, bx, my, by);
  const double refined = q00 + q10 + q01 + q11;
  const double delta = refined - whole;
  ++out.cells;
  if (out.cells > cell_budget)
    throw ConvergenceError("adaptive_simpson_2d: cell budget exhausted");
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
    out.value += refined + delta / 15.0;
    out.error += std::abs(delta) / 15.0;
    return;
  }
  adaptive_simpson_2d_rec(f, ax, mx, ay, my, q00, 0.25 * tol, depth + 1, max_depth, cell_budget, out);
  adaptive_simpson_2d_rec(f, mx, bx, ay, my, q10, 0.25 * tol, depth + 1, max_depth, cell_budget, out);
  adaptive_simpson_2d_rec(f, ax, mx, my, by, q01, 0.25 * tol, depth + 1, max_depth, cell_budget, out);
  adaptive_simpson_2d_rec(f, mx, bx, my, by, q11, 0.25 * tol, depth + 1, max_depth, cell_budget, out);
}

template <typename F>
QuadratureResult adaptive_simpson_2d(const F& f, double ax, double bx, double ay, double by,
                                     double tol, int max_depth = 30, long cell_budget = 1L << 22) {
  QuadratureResult out;
  const int nx = 4, ny = 4;
  const double hx = (bx - ax) / nx, hy = (by - ay) / ny;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const double cax = ax + i * hx, cay = ay + j * hy;
      adaptive_simpson_2d_rec(f, cax, cax + hx, cay, cay + hy,
                              simpson_2d(f, cax, cax + hx, cay, cay + hy), tol / (nx * ny), 0,
                              max_depth, cell_budget, out);
    }
  return out;
}

// Tensor 3-point Simpson over a d-box (27 evaluations for d = 3).
template <typename F>
double simpson_nd(const F& f, const Vectord& lo, const Vectord& hi) {
  const int d = static_cast<int>(lo.size());
  const long npts = static_cast<long>(std::pow(3.0, d));
  Vectord x(d);
  double total = 0.0;
  for (long idx = 0; idx < npts; ++idx) {
    long t = idx;
    double w = 1.0;
    for (int k = 0; k < d; ++k) {
      const int j = static_cast<int>(t % 3);
      t /= 3;
      x[k] = (j == 0) ? lo[k] : (j == 2 ? hi[k] : 0.5 * (lo[k] + hi[k]));
      w *= (j == 1) ? 4.0 / 6.0 : 1.0 / 6.0;
    }
    total += w * f(x);
  }
  return total * (hi - lo).prod();
}

template <typename F>
void adaptive_box_rec(const F& f, Vectord lo, Vectord hi, double whole, double tol, int depth,
                      int max_depth, long cell_budget, QuadratureResult& out) {
  // Split along the widest axis.
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const double mid = 0.5 * (lo[axis] + hi[axis]);
  Vectord hi_left = hi, lo_right = lo;
  hi_left[axis] = mid;
  lo_right[axis] = mid;
  const double left = simpson_nd(f, lo, hi_left);
  const double right = simpson_nd(f, lo_right, hi);
  const double delta = left + right - whole;
  ++out.cells;
  if (out.cells > cell_budget) throw ConvergenceError("adaptive_box: cell budget exhausted");
  if (depth >= max_depth || std::abs(delta) <= 15.0 * tol) {
    out.value += left + right + delta / 15.0;
    out.error += std::abs(delta) / 15.0;
    return;
  }
  adaptive_box_rec(f, lo, hi_left, left, 0.5 * tol, depth + 1, max_depth, cell_budget, out);
  adaptive_box_rec(f, lo_right, hi, right, 0.5 * tol, depth + 1, max_depth, cell_budget, out);
}

/// Adaptive integration of a smooth integrand over an axis-aligned d-box.
template <typename F>
QuadratureResult adaptive_box(const F& f, const Vectord& lo, const Vectord& hi, double tol,
                              int max_depth = 60, long cell_budget = 1L << 22) {
  QuadratureResult out;
  adaptive_box_rec(f, lo, hi, simpson_nd(f, lo, hi), tol, 0, max_depth, cell_budget, out);
  return out;
}

}  // namespace detail
}  // namespace centerout
