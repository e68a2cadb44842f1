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

#include "kgcert/lambert_w.hpp"

#include <cmath>
#include <limits>

#include "kgcert/errors.hpp"

namespace kgcert {

double lambert_w0(double x) {
  if (!(x >= 0.0)) throw DomainError("lambert_w0 requires x >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  if (x < 1e-8) {
    // W(x) = x - x^2 + 3/2 x^3 - ...
    return x * (1.0 - x * (1.0 - 1.5 * x));
  }
  double w = std::log1p(x);
  if (x > 3.0) w -= std::log(w); // asymptotic start for large x
  for (int iter = 0; iter < 64; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (!(next > -1.0)) {
      w = 0.5 * (w - 1.0 + 1e-300);
      continue;
    }
    const bool done = std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(next));
    w = next;
    if (done) break;
  }
  // One Newton polish in the form that minimises the residual.
  const double f = w * std::exp(w) - x;
  if (f != 0.0) w -= f / (std::exp(w) * (w + 1.0));
  return w;
}

} // namespace kgcert
