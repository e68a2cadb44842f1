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

#include "kgcert/peano_baker.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kgcert/errors.hpp"
#include "kgcert/propagator.hpp"
#include "kgcert/quadrature.hpp"

namespace kgcert {
namespace {

// Cumulative integration matrix on Gauss-Legendre nodes:
// S[j][k] = integral_{-1}^{x_j} L_k(x) dx for the Lagrange basis L_k.
std::vector<std::vector<double>> cumulative_matrix(const GaussLegendreRule& rule) {
  const std::size_t q = rule.nodes.size();
  std::vector<std::vector<double>> S(q, std::vector<double>(q, 0.0));
  for (std::size_t j = 0; j < q; ++j) {
    const double half = 0.5 * (rule.nodes[j] + 1.0);
    for (std::size_t k = 0; k < q; ++k) {
      double acc = 0.0;
      for (std::size_t g = 0; g < q; ++g) {
        const double y = -1.0 + half * (1.0 + rule.nodes[g]);
        double basis = 1.0;
        for (std::size_t m = 0; m < q; ++m) {
          if (m != k) basis *= (y - rule.nodes[m]) / (rule.nodes[k] - rule.nodes[m]);
        }
        acc += rule.weights[g] * basis;
      }
      S[j][k] = half * acc;
    }
  }
  return S;
}

struct Panel {
  double start;
  double width; // signed
};

} // namespace

Mat2C peano_baker_truncated(const ModelSpec& spec, double s, double t, double xi,
                            int terms, PeanoBakerGrid grid) {
  if (terms < 0 || terms > 30) {
    throw PreconditionError("peano_baker_truncated: terms must lie in [0, 30]");
  }
  if (grid.panels < 1 || grid.nodes_per_panel < 2) {
    throw PreconditionError("peano_baker_truncated: bad quadrature grid");
  }
  if (terms == 0 || s == t) return Mat2C::identity();

  const auto rule = gauss_legendre(static_cast<std::size_t>(grid.nodes_per_panel));
  const auto S = cumulative_matrix(rule);
  const std::size_t q = rule.nodes.size();

  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  auto knots = split_at_breakpoints(spec.breakpoints(), spec.period(), lo, hi);
  if (t < s) std::reverse(knots.begin(), knots.end());
  const double max_width = (hi - lo) / grid.panels;
  std::vector<Panel> panels;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    const double span = knots[k + 1] - knots[k];
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::abs(span) / max_width - 1e-12)));
    for (std::size_t c = 0; c < count; ++c) {
      panels.push_back({knots[k] + span * static_cast<double>(c) / static_cast<double>(count),
                        span / static_cast<double>(count)});
    }
  }

  // A at every node, evaluated strictly inside its panel.
  std::vector<Mat2C> A(panels.size() * q);
  double sup_norm = 0.0;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    for (std::size_t j = 0; j < q; ++j) {
      const double tau = panels[p].start + 0.5 * panels[p].width * (1.0 + rule.nodes[j]);
      A[p * q + j] = system_matrix(spec, tau, xi);
      sup_norm = std::max(sup_norm, spectral_norm_2x2(A[p * q + j]));
    }
  }
  if ((hi - lo) * sup_norm > 5.0) {
    throw PreconditionError(
        "peano_baker_truncated: |t-s| sup|A| exceeds the convergence window (5)");
  }

  std::vector<Mat2C> level(panels.size() * q, Mat2C::identity());
  std::vector<Mat2C> next(level.size());
  std::vector<Mat2C> f(q);
  Mat2C result = Mat2C::identity();
  cplx phase{1.0, 0.0};
  const cplx i_unit{0.0, 1.0};
  for (int l = 1; l <= terms; ++l) {
    phase *= i_unit;
    Mat2C start = Mat2C::zero();
    for (std::size_t p = 0; p < panels.size(); ++p) {
      const double half = 0.5 * panels[p].width;
      for (std::size_t k = 0; k < q; ++k) f[k] = A[p * q + k] * level[p * q + k];
      for (std::size_t j = 0; j < q; ++j) {
        Mat2C acc = Mat2C::zero();
        for (std::size_t k = 0; k < q; ++k) acc += S[j][k] * f[k];
        next[p * q + j] = start + half * acc;
      }
      Mat2C total = Mat2C::zero();
      for (std::size_t k = 0; k < q; ++k) total += rule.weights[k] * f[k];
      start += half * total;
    }
    result += phase * start;
    level.swap(next);
  }
  return result;
}

} // namespace kgcert
