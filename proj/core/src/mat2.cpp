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

#include "kgcert/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace kgcert {

bool Mat2C::finite() const {
  auto ok = [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return ok(a11) && ok(a12) && ok(a21) && ok(a22);
}

std::array<cplx, 2> eigenvalues_2x2(const Mat2C& m) {
  const cplx half_tr = 0.5 * m.trace();
  const cplx det = m.det();
  const cplx root = std::sqrt(half_tr * half_tr - det);
  // Pick the sign that adds |half_tr| and |root| constructively.
  const cplx big = (std::real(std::conj(half_tr) * root) >= 0.0) ? half_tr + root
                                                                 : half_tr - root;
  if (big == cplx{}) return {cplx{}, cplx{}};
  return {big, det / big};
}

double spectral_norm_2x2(const Mat2C& m) {
  // M^H M = [[p, q], [conj(q), r]]
  const double p = std::norm(m.a11) + std::norm(m.a21);
  const double r = std::norm(m.a12) + std::norm(m.a22);
  const cplx q = std::conj(m.a11) * m.a12 + std::conj(m.a21) * m.a22;
  const double mean = 0.5 * (p + r);
  const double half_gap = 0.5 * (p - r);
  const double lambda = mean + std::sqrt(half_gap * half_gap + std::norm(q));
  return std::sqrt(std::max(lambda, 0.0));
}

double spectral_radius_2x2(const Mat2C& m) {
  const auto eig = eigenvalues_2x2(m);
  return std::max(std::abs(eig[0]), std::abs(eig[1]));
}

double max_entry_difference(const Mat2C& a, const Mat2C& b) {
  return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12),
                   std::abs(a.a21 - b.a21), std::abs(a.a22 - b.a22)});
}

Mat2C power(Mat2C m, unsigned k) {
  Mat2C result = Mat2C::identity();
  while (k > 0) {
    if (k & 1U) result = result * m;
    k >>= 1U;
    if (k > 0) m = m * m;
  }
  return result;
}

} // namespace kgcert
