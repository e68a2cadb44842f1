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

#include "kgcert/quadrature.hpp"

#include <algorithm>
#include <numbers>

namespace kgcert {

GaussLegendreRule gauss_legendre(std::size_t n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<double> split_at_breakpoints(std::span<const double> breaks,
                                         double period, double a, double b) {
  std::vector<double> knots{a};
  if (!breaks.empty() && b > a) {
    const double first_period = std::floor(a / period);
    const double last_period = std::floor(b / period);
    for (double k = first_period; k <= last_period; k += 1.0) {
      for (double r : breaks) {
        const double x = k * period + r;
        // Skip points that would produce slivers at the ends.
        if (x > a + 1e-13 * std::max(1.0, std::abs(a)) &&
            x < b - 1e-13 * std::max(1.0, std::abs(b))) {
          knots.push_back(x);
        }
      }
    }
    std::sort(knots.begin() + 1, knots.end());
  }
  knots.push_back(b);
  return knots;
}

} // namespace kgcert
