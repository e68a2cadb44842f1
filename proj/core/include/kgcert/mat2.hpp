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

#include <array>
#include <complex>

namespace kgcert {

using cplx = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2C {
  cplx a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C zero() { return {}; }

  cplx trace() const { return a11 + a22; }
  cplx det() const { return a11 * a22 - a12 * a21; }
  Mat2C adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  /// Inverse via the adjugate; the caller guarantees det != 0.
  Mat2C inverse() const {
    const cplx d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
  bool finite() const;

  Mat2C& operator+=(const Mat2C& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2C& operator-=(const Mat2C& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2C& operator*=(cplx s) {
    a11 *= s; a12 *= s; a21 *= s; a22 *= s;
    return *this;
  }
};

inline Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
inline Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
inline Mat2C operator*(cplx s, Mat2C a) { return a *= s; }
inline Mat2C operator*(Mat2C a, cplx s) { return a *= s; }
inline Mat2C operator*(const Mat2C& a, const Mat2C& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

/// Commutator [a, b] = ab - ba.
inline Mat2C commutator(const Mat2C& a, const Mat2C& b) { return a * b - b * a; }

/// Roots of x^2 - tr x + det. The larger-magnitude root is formed first and
/// the other is recovered as det / root, which avoids cancellation.
std::array<cplx, 2> eigenvalues_2x2(const Mat2C& m);

/// Largest singular value, from the closed-form spectrum of M^H M.
double spectral_norm_2x2(const Mat2C& m);

/// max(|eig1|, |eig2|).
double spectral_radius_2x2(const Mat2C& m);

/// max_ij |a_ij - b_ij|.
double max_entry_difference(const Mat2C& a, const Mat2C& b);

/// M^k by binary powering (k >= 0).
Mat2C power(Mat2C m, unsigned k);

} // namespace kgcert
