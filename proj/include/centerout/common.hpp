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

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace centerout {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Point sets are stored one point per row, n x d.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vectord = Vector<double>;
using PointMatrixd = PointMatrix<double>;

using Index = Eigen::Index;

/// Thrown when an argument violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when an iterative numerical routine fails to converge.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Surface measure of the unit sphere S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
template <typename Scalar = double>
Scalar sphere_surface_constant(int d) {
  if (d < 1) throw DomainError("sphere_surface_constant: dimension must be >= 1");
  const double pi = M_PI;
  return Scalar(2.0 * std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d));
}

}  // namespace centerout
