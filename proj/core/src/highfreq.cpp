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

#include "kgcert/highfreq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgcert/errors.hpp"
#include "kgcert/monodromy.hpp"

namespace kgcert {
namespace {

const cplx kI{0.0, 1.0};

// Ek = int_0^1 x^(k-1) e^{i theta x} dx for k = 1, 2, 3.
struct FilonWeights {
  cplx e1, e2, e3;
};

FilonWeights filon_weights(double theta) {
  FilonWeights w{};
  if (std::abs(theta) < 1.0) {
    cplx term{1.0, 0.0}; // (i theta)^n / n!
    for (int n = 0; n < 24 && std::abs(term) > 1e-18; ++n) {
      w.e1 += term / static_cast<double>(n + 1);
      w.e2 += term / static_cast<double>(n + 2);
      w.e3 += term / static_cast<double>(n + 3);
      term *= kI * theta / static_cast<double>(n + 1);
    }
    return w;
  }
  const cplx it = kI * theta;
  const cplx ex = std::exp(it);
  w.e1 = (ex - 1.0) / it;
  w.e2 = (ex - w.e1) / it;
  w.e3 = (ex - 2.0 * w.e2) / it;
  return w;
}

// int_0^1 e^{i theta x} p(x) dx for the quadratic p through (0, f0), (1/2, fm), (1, f1).
cplx filon_panel(const FilonWeights& w, double f0, double fm, double f1) {
  const double curvature = 4.0 * (fm - 0.5 * (f0 + f1));
  return f0 * w.e1 + (f1 - f0) * w.e2 + curvature * (w.e2 - w.e3);
}

double max_symbol(const ModelSpec& spec, double xi) {
  const double m2 = spec.m0() * spec.m0() + spec.epsilon();
  return std::sqrt(xi * xi + m2);
}

} // namespace

std::size_t corrector_points_per_period(const ModelSpec& spec, double xi) {
  const double cycles = std::ceil(max_symbol(spec, xi) * spec.period());
  return std::max<std::size_t>(4096, 128 * static_cast<std::size_t>(cycles));
}

CorrectorTable::CorrectorTable(const ModelSpec& spec, double xi, double t_end,
                               std::size_t intervals) {
  if (intervals == 0 || !(t_end >= 0.0)) {
    throw PreconditionError("CorrectorTable needs t_end >= 0 and intervals > 0");
  }
  step_ = t_end / static_cast<double>(intervals);
  plus_.assign(intervals + 1, cplx{});
  minus_.assign(intervals + 1, cplx{});
  if (t_end == 0.0) return;

  const auto& b = spec.dissipation();
  const bool constant_mass = spec.has_constant_mass();
  const double w0 = japanese_bracket(xi, spec.m0());
  auto w = [&](double t) { return std::sqrt(xi * xi + spec.mass_squared(t)); };
  const double h = step_;
  const double nudge = 1e-12 * h;

  double phase = 0.0; // 2 * int_0^tau <xi>
  cplx acc_plus{};    // int_0^tau e^{+i phase} b
  cplx acc_minus{};   // int_0^tau e^{-i phase} b
  cplx rotor{1.0, 0.0}; // e^{i phase}
  for (std::size_t i = 0; i < intervals; ++i) {
    const double t0 = static_cast<double>(i) * h;
    const double t1 = static_cast<double>(i + 1) * h;
    const double next_phase =
        constant_mass ? 2.0 * w0 * t1
                      : phase + 2.0 * h / 6.0 * (w(t0) + 4.0 * w(0.5 * (t0 + t1)) + w(t1));
    const double b_left = b(t0 + nudge);
    const double b_mid = b(0.5 * (t0 + t1));
    const double b_right = b(t1 - nudge);
    const auto fw = filon_weights(next_phase - phase);
    const cplx panel = h * filon_panel(fw, b_left, b_mid, b_right);
    acc_plus += rotor * panel;
    acc_minus += std::conj(rotor * panel);
    phase = next_phase;
    rotor = std::polar(1.0, phase);
    plus_[i + 1] = -std::conj(rotor) * acc_plus;
    minus_[i + 1] = -rotor * acc_minus;
  }
}

CorrectorPair n_pm(const ModelSpec& spec, double t, double xi) {
  const double T = spec.period();
  if (!(t >= 0.0 && t <= 2.0 * T * (1.0 + 1e-12))) {
    throw PreconditionError("n_pm: t must lie in [0, 2T]");
  }
  if (t == 0.0) return {};
  const double per_period = static_cast<double>(corrector_points_per_period(spec, xi));
  const auto intervals =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(per_period * t / T)));
  CorrectorTable table(spec, xi, t, intervals);
  return {table.plus(intervals), table.minus(intervals)};
}

DiagonalizationFrame make_frame(double t, double xi, double b, cplx n_plus, cplx n_minus) {
  DiagonalizationFrame f;
  f.t = t;
  f.xi = xi;
  f.n_plus = n_plus;
  f.n_minus = n_minus;
  f.N1 = {1.0, n_minus, n_plus, 1.0};
  const cplx det = 1.0 - n_plus * n_minus;
  if (std::abs(det) < kFrameDeterminantGuard) {
    throw FrameError("corrector N1 nearly singular (|det| < 0.1); xi too small");
  }
  f.N1_inv = {1.0 / det, -n_minus / det, -n_plus / det, 1.0 / det};
  const Mat2C R1{0.0, kI * b, kI * b, 0.0};
  const Mat2C identity_minus_N1{0.0, -n_minus, -n_plus, 0.0};
  f.R2 = -1.0 * (f.N1_inv * R1 * identity_minus_N1);
  return f;
}

DiagonalizationFrame frame_at(const ModelSpec& spec, double t, double xi) {
  const auto n = n_pm(spec, t, xi);
  return make_frame(t, xi, spec.dissipation()(t), n.plus, n.minus);
}

double suplarge_quantity(const ModelSpec& spec, double xi, std::size_t t_points) {
  if (t_points < 2) throw PreconditionError("suplarge_quantity needs t_points >= 2");
  const double T = spec.period();
  const std::size_t cells = t_points - 1;
  const std::size_t required = std::max<std::size_t>(1024, corrector_points_per_period(spec, xi));
  const std::size_t per_period = cells * ((required + cells - 1) / cells);
  const CorrectorTable table(spec, xi, 2.0 * T, 2 * per_period);
  const std::size_t n = table.intervals();
  const auto& b = spec.dissipation();

  std::vector<double> cumulative(n + 1, 0.0);
  std::vector<double> norm_N1(n + 1);
  std::vector<double> norm_N1_inv(n + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = table.time(i);
    const auto f = make_frame(t, xi, b(t), table.plus(i), table.minus(i));
    norm_N1[i] = spectral_norm_2x2(f.N1);
    norm_N1_inv[i] = spectral_norm_2x2(f.N1_inv);
    const double r2 = spectral_norm_2x2(f.R2);
    if (i > 0) cumulative[i] = cumulative[i - 1] + 0.5 * table.step() * (prev + r2);
    prev = r2;
  }
  double best = 0.0;
  const std::size_t stride = per_period / cells;
  for (std::size_t j = 0; j < t_points; ++j) {
    const std::size_t a = j * stride;
    const std::size_t c = a + per_period;
    const double q = norm_N1[c] * std::exp(cumulative[c] - cumulative[a]) * norm_N1_inv[a];
    best = std::max(best, q);
  }
  return best;
}

double window_sup(const ModelSpec& spec, double N, const ThresholdOptions& opts) {
  const auto xis = uniform_grid(N, opts.window * N, opts.xi_points);
  std::vector<double> values(xis.size(), 0.0);
  opts.parallel(xis.size(), [&](std::size_t i) {
    try {
      values[i] = suplarge_quantity(spec, xis[i], opts.t_points);
    } catch (const FrameError&) {
      values[i] = std::numeric_limits<double>::infinity();
    }
  });
  return *std::max_element(values.begin(), values.end());
}

ThresholdResult find_threshold_N(const ModelSpec& spec, const ThresholdOptions& opts) {
  if (!(opts.start > 0.0) || !(opts.window > 1.0) || opts.xi_points < 2) {
    throw PreconditionError("find_threshold_N: need start > 0, window > 1, xi_points >= 2");
  }
  ThresholdResult result;
  result.target = std::exp(0.5 * spec.beta() * spec.period());
  result.window = opts.window;
  result.xi_points = opts.xi_points;
  result.t_points = opts.t_points;

  const ModelSpec massless = spec.with_constant_mass(0.0);
  auto accept = [&](double N, double& value) {
    value = window_sup(massless, N, opts);
    const bool ok = value <= result.target;
    result.trace.push_back({N, value, ok});
    return ok;
  };

  double N = opts.start;
  double lo = 0.0;
  double value = 0.0;
  while (!accept(N, value)) {
    lo = N;
    N *= 2.0;
    if (N > opts.max_N) {
      throw ThresholdSearchError("no frequency threshold below " + std::to_string(opts.max_N));
    }
  }
  double hi = N;
  double hi_value = value;
  if (lo > 0.0) {
    while (hi - lo > opts.resolution * hi) {
      const double mid = 0.5 * (lo + hi);
      if (accept(mid, value)) {
        hi = mid;
        hi_value = value;
      } else {
        lo = mid;
      }
    }
  }
  result.N = hi;
  result.sup_value = hi_value;
  result.xi_max_checked = opts.window * hi;
  result.actual_mass_sup = window_sup(spec, hi, opts);
  if (!(result.actual_mass_sup <= result.target)) {
    throw ThresholdSearchError("threshold N = " + std::to_string(hi) +
                               " fails the re-check under the model's mass");
  }
  return result;
}

LargeFrequencyCheck check_large_frequency_contraction(const ModelSpec& spec, double N,
                                                      double window, std::size_t t_points,
                                                      std::size_t xi_points, double tol,
                                                      const ParallelFor& parallel) {
  const auto grid = build_monodromy_grid(spec, periodic_grid(spec.period(), t_points),
                                         uniform_grid(N, window * N, xi_points), tol, parallel);
  LargeFrequencyCheck check;
  check.bound = std::exp(-0.5 * spec.beta() * spec.period());
  check.max_norm = -1.0;
  for (std::size_t i = 0; i < grid.xi_grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.t_grid.size(); ++j) {
      const double v = spectral_norm_2x2(grid.at(i, j));
      if (v > check.max_norm) {
        check.max_norm = v;
        check.worst_t = grid.t_grid[j];
        check.worst_xi = grid.xi_grid[i];
      }
    }
  }
  return check;
}

} // namespace kgcert
