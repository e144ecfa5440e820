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
#include <random>

#include "centerout/common.hpp"

// Deterministic random primitives. Every sampler here is a pure function of
// its seed so that repeated runs are byte-identical; the uniform and Gaussian
// transforms are written out explicitly instead of relying on
// std::*_distribution (whose output is implementation-defined).

namespace centerout {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent child seed from (seed, tag, index). Used to split
/// Monte-Carlo work into chunks whose results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t index = 0) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= 0x6a09e667f3bcc909ULL + tag;
  splitmix64(s);
  s ^= index * 0x3c6ef372fe94f82bULL + 0xbb67ae8584caa73bULL;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe under log().
  double uniform01_open0() { return 1.0 - uniform01(); }

  /// Standard normal via Box-Muller. Draws two uniforms per pair.
  void normal_pair(double& a, double& b) {
    const double u1 = uniform01_open0();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = r * std::cos(2.0 * M_PI * u2);
    b = r * std::sin(2.0 * M_PI * u2);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double a, b;
    normal_pair(a, b);
    spare_ = b;
    have_spare_ = true;
    return a;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Uniform direction on S^{d-1}. d = 1 gives a fair sign.
template <typename Scalar = double>
Vector<Scalar> sample_sphere_direction(Rng& rng, int d) {
  Vector<Scalar> v(d);
  if (d == 1) {
    v[0] = (rng.next_u64() & 1u) ? Scalar(1) : Scalar(-1);
    return v;
  }
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (int k = 0; k < d; ++k) {
      const double g = rng.normal();
      v[k] = Scalar(g);
      norm2 += g * g;
    }
  } while (norm2 < 1e-300);
  v /= std::sqrt(norm2);
  return v;
}

/// Inverse standard normal CDF (Acklam's rational approximation, |err| < 1.2e-9).
inline double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("inverse_normal_cdf: p must be in (0,1)");
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

/// Halton sequence point (index >= 0) in the given prime base, in (0, 1).
inline double halton(std::uint64_t index, std::uint64_t base) {
  double f = 1.0, r = 0.0;
  std::uint64_t i = index + 1;  // skip the origin
  while (i > 0) {
    f /= static_cast<double>(base);
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline std::uint64_t nth_prime(int k) {
  static const std::uint64_t primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                         23, 29, 31, 37, 41, 43, 47, 53};
  if (k < 0 || k >= 16) throw DomainError("nth_prime: index out of supported range");
  return primes[k];
}

}  // namespace centerout
