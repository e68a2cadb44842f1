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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace kgcert {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(std::size_t n);

/// Splits [a, b] (a <= b) at every periodic copy of `breaks` (points in
/// [0, period)) lying strictly inside. Returned knots include a and b.
std::vector<double> split_at_breakpoints(std::span<const double> breaks,
                                         double period, double a, double b);

/// Composite Gauss-Legendre integral of f over [a, b], panels aligned to the
/// periodic breakpoints, each piece cut into panels no wider than max_panel.
template <class F>
double integrate_piecewise(F&& f, double a, double b,
                           std::span<const double> breaks, double period,
                           double max_panel, const GaussLegendreRule& rule) {
  if (a == b) return 0.0;
  const double sign = b < a ? -1.0 : 1.0;
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const auto knots = split_at_breakpoints(breaks, period, lo, hi);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < knots.size(); ++p) {
    const double x0 = knots[p];
    const double x1 = knots[p + 1];
    const auto panels = static_cast<std::size_t>(std::ceil((x1 - x0) / max_panel));
    const std::size_t count = panels == 0 ? 1 : panels;
    const double h = (x1 - x0) / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double c = x0 + (static_cast<double>(k) + 0.5) * h;
      double s = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        s += rule.weights[q] * f(c + 0.5 * h * rule.nodes[q]);
      }
      total += 0.5 * h * s;
    }
  }
  return sign * total;
}

} // namespace kgcert
