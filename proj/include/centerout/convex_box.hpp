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

#include "centerout/common.hpp"

namespace centerout {

/// Axis-aligned box with lower[k] < upper[k] on every axis.
template <typename Scalar = double>
struct ConvexBox {
  Vector<Scalar> lower;
  Vector<Scalar> upper;

  ConvexBox() = default;
  ConvexBox(Vector<Scalar> lo, Vector<Scalar> hi) : lower(std::move(lo)), upper(std::move(hi)) {
    validate();
  }

  void validate() const {
    if (lower.size() != upper.size() || lower.size() == 0)
      throw DomainError("ConvexBox: lower/upper size mismatch or empty");
    for (Index k = 0; k < lower.size(); ++k)
      if (!(lower[k] < upper[k]))
        throw DomainError("ConvexBox: lower[k] < upper[k] required (degenerate box)");
  }

  int dim() const { return static_cast<int>(lower.size()); }

  Scalar volume() const { return (upper - lower).prod(); }

  Vector<Scalar> center() const { return Scalar(0.5) * (lower + upper); }

  /// Norm of the farthest corner from the origin.
  Scalar max_corner_norm() const {
    Scalar s = 0;
    for (Index k = 0; k < lower.size(); ++k) {
      const Scalar m = std::max(std::abs(lower[k]), std::abs(upper[k]));
      s += m * m;
    }
    return std::sqrt(s);
  }

  /// Euclidean distance from the origin to the closed box.
  Scalar distance_to_origin() const {
    Scalar s = 0;
    for (Index k = 0; k < lower.size(); ++k) {
      Scalar gap = 0;
      if (lower[k] > 0) gap = lower[k];
      else if (upper[k] < 0) gap = -upper[k];
      s += gap * gap;
    }
    return std::sqrt(s);
  }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    for (Index k = 0; k < lower.size(); ++k)
      if (x[k] < lower[k] || x[k] > upper[k]) return false;
    return true;
  }

  /// Dilation by 1/2 about the box's own center of mass.
  ConvexBox half_dilation() const {
    const Vector<Scalar> c = center();
    return ConvexBox(c + Scalar(0.5) * (lower - c), c + Scalar(0.5) * (upper - c));
  }
};

using ConvexBoxd = ConvexBox<double>;

}  // namespace centerout
