/*
   Copyright 2026 The kgcert Authors

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

// Independent reference computations used by the tests. None of these share
// code paths with the library routines they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>

#include "kgcert/mat2.hpp"

namespace kgcert::oracle {

/// exp(X) for a 2x2 matrix through the trace split X = mu I + Y, Y^2 = q I:
/// exp(X) = e^mu (cosh(r) I + sinh(r)/r Y), r^2 = q.
inline Mat2C expm(const Mat2C& X) {
  const cplx mu = 0.5 * X.trace();
  const Mat2C Y{X.a11 - mu, X.a12, X.a21, X.a22 - mu};
  const cplx q = -Y.det();
  const cplx r = std::sqrt(q);
  cplx c;
  cplx s;
  if (std::abs(r) < 1e-4) {
    c = 1.0 + q / 2.0 + q * q / 24.0 + q * q * q / 720.0;
    s = 1.0 + q / 6.0 + q * q / 120.0 + q * q * q / 5040.0;
  } else {
    c = std::cosh(r);
    s = std::sinh(r) / r;
  }
  const cplx e = std::exp(mu);
  return {e * (c + s * Y.a11), e * s * Y.a12, e * s * Y.a21, e * (c + s * Y.a22)};
}

/// Fundamental solution of D_t E = A E for constant A: exp(i A t).
inline Mat2C constant_propagator(double w, double b, double t) {
  const cplx i{0.0, 1.0};
  const Mat2C iA{0.0, i * w, i * w, -2.0 * b};
  return expm(t * iA);
}

/// Largest singular value by power iteration on M^H M.
inline double power_iteration_norm(const Mat2C& M, int iterations = 2000) {
  const Mat2C H = M.adjoint() * M;
  cplx x1{0.7, 0.1};
  cplx x2{0.3, -0.5};
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const cplx y1 = H.a11 * x1 + H.a12 * x2;
    const cplx y2 = H.a21 * x1 + H.a22 * x2;
    const double n = std::sqrt(std::norm(y1) + std::norm(y2));
    if (n == 0.0) return 0.0;
    lambda = n / std::sqrt(std::norm(x1) + std::norm(x2));
    x1 = y1 / n;
    x2 = y2 / n;
  }
  return std::sqrt(lambda);
}

/// Root of w e^w = x on [0, max(1, x)] by bisection.
inline double lambert_w_bisection(double x) {
  double lo = 0.0;
  double hi = std::max(1.0, x);
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Classical RK4 for a complex scalar ODE y' = f(t, y).
inline cplx rk4(const std::function<cplx(double, cplx)>& f, cplx y, double t0, double t1,
                int steps) {
  const double h = (t1 - t0) / steps;
  double t = t0;
  for (int k = 0; k < steps; ++k) {
    const cplx k1 = f(t, y);
    const cplx k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const cplx k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const cplx k4 = f(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
  }
  return y;
}

/// Deterministic uniform [0, 1) stream (SplitMix64).
class Uniform {
public:
  explicit Uniform(std::uint64_t seed) : state_(seed) {}
  double operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

private:
  std::uint64_t state_;
};

} // namespace kgcert::oracle
