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

#include <cmath>

#include "doctest.h"
#include "kgcert/errors.hpp"
#include "kgcert/highfreq.hpp"
#include "kgcert/monodromy.hpp"
#include "oracles.hpp"
#include "profiles.hpp"

using namespace kgcert;

namespace {

const cplx I{0.0, 1.0};

// n+- from the corrector ODE D_t n+- = -+2 <xi> n+- + i b, n+-(0) = 0.
CorrectorPair ode_oracle(const ModelSpec& spec, double t, double xi, int steps) {
  auto w = [&](double s) { return symbol(spec, s, xi); };
  const auto& b = spec.dissipation();
  const cplx plus = oracle::rk4(
      [&](double s, cplx n) { return -2.0 * I * w(s) * n - b(s); }, 0.0, 0.0, t, steps);
  const cplx minus = oracle::rk4(
      [&](double s, cplx n) { return 2.0 * I * w(s) * n - b(s); }, 0.0, 0.0, t, steps);
  return {plus, minus};
}

ThresholdOptions quick_threshold() {
  ThresholdOptions o;
  o.xi_points = 24;
  o.t_points = 16;
  return o;
}

} // namespace

TEST_SUITE("highfreq") {

TEST_CASE("n+- vanish at t = 0") {
  const ModelSpec spec(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{1.0});
  const auto n = n_pm(spec, 0.0, 5.0);
  CHECK(n.plus == cplx{});
  CHECK(n.minus == cplx{});
  CHECK_THROWS_AS(n_pm(spec, 2.5, 5.0), PreconditionError);
}

TEST_CASE("constant coefficients match the closed form") {
  const double b0 = 0.7;
  const ModelSpec spec(PeriodicCoefficient::constant(1.0, b0), ConstantMass{1.0});
  for (double xi : {3.0, 10.0, 40.0}) {
    const double w = std::hypot(xi, 1.0);
    for (double t : {0.1, 0.9, 1.7, 2.0}) {
      const auto n = n_pm(spec, t, xi);
      const cplx plus = -b0 * (1.0 - std::exp(-2.0 * I * w * t)) / (2.0 * I * w);
      const cplx minus = -b0 * (1.0 - std::exp(2.0 * I * w * t)) / (-2.0 * I * w);
      CHECK(std::abs(n.plus - plus) <= 1e-8);
      CHECK(std::abs(n.minus - minus) <= 1e-8);
      CHECK(std::abs(n.plus) <= b0 / w + 1e-12);
    }
  }
}

TEST_CASE("quadrature agrees with the corrector ODE") {
  oracle::Uniform u(59);
  const ModelSpec profiles[] = {
      ModelSpec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0}),
      ModelSpec(testing::sampled_triangle(), ConstantMass{0.5}),
      ModelSpec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5),
                PerturbedMass{1.0, 0.3, PeriodicCoefficient::sin_offset(1.0, 0.0, 1.0)})};
  for (const auto& spec : profiles) {
    for (int i = 0; i < 4; ++i) {
      const double t = u(0.05, 2.0);
      const double xi = u(2.0, 20.0);
      const auto n = n_pm(spec, t, xi);
      const auto ref = ode_oracle(spec, t, xi, 40000);
      CHECK(std::abs(n.plus - ref.plus) <= 1e-8);
      CHECK(std::abs(n.minus - ref.minus) <= 1e-8);
    }
  }
}

TEST_CASE("corrector satisfies the frame equation (central differences)") {
  oracle::Uniform u(61);
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  const double xi = 12.0;
  const std::size_t n = 1 << 15;
  const CorrectorTable table(spec, xi, 2.0, n);
  const double h = table.step();
  for (int k = 0; k < 20; ++k) {
    const auto i = static_cast<std::size_t>(u(1.0, static_cast<double>(n - 1)));
    const double t = table.time(i);
    const double w = symbol(spec, t, xi);
    const double b = spec.dissipation()(t);
    const Mat2C N1{1.0, table.minus(i), table.plus(i), 1.0};
    const Mat2C D1{w + I * b, 0.0, 0.0, -w + I * b};
    const Mat2C R1{0.0, I * b, I * b, 0.0};
    const Mat2C dN{0.0, (table.minus(i + 1) - table.minus(i - 1)) / (2.0 * h), (table.plus(i + 1) - table.plus(i - 1)) / (2.0 * h), 0.0};
    const Mat2C DtN = -1.0 * I * dN;
    CHECK(max_entry_difference(DtN, commutator(D1, N1) + R1) <= 1e-4);
  }
}

TEST_CASE("corrector decays like 1/xi") {
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  auto scaled_max = [&](double xi) {
    const CorrectorTable table(spec, xi, 2.0, 2 * corrector_points_per_period(spec, xi));
    double m = 0.0;
    for (std::size_t i = 0; i <= table.intervals(); ++i) {
      m = std::max({m, std::abs(table.plus(i)), std::abs(table.minus(i))});
    }
    return m * xi;
  };
  const double a = scaled_max(100.0);
  const double b = scaled_max(1000.0);
  CHECK(b <= 2.0 * a);
  CHECK(b <= 1.5 * 3.0); // (sup b + t TV) / 2 bound with t <= 2, TV = 2
}

TEST_CASE("frame construction") {
  const auto f0 = make_frame(0.1, 10.0, 1.0, 0.0, 0.0);
  CHECK(max_entry_difference(f0.N1, Mat2C::identity()) == 0.0);
  CHECK(max_entry_difference(f0.R2, Mat2C::zero()) == 0.0);
  CHECK_THROWS_AS(make_frame(0.1, 1.0, 1.0, cplx{0.97, 0.0}, cplx{0.97, 0.0}), FrameError);

  oracle::Uniform u(67);
  const ModelSpec spec(testing::sampled_triangle(), ConstantMass{1.0});
  for (int i = 0; i < 10; ++i) {
    const auto f = frame_at(spec, u(0.0, 2.0), u(5.0, 30.0));
    CHECK(f.N1.a11 == cplx{1.0});
    CHECK(f.N1.a22 == cplx{1.0});
    CHECK(max_entry_difference(f.N1 * f.N1_inv, Mat2C::identity()) <= 1e-10);
    CHECK(f.N1.det() == f.N1.a11 * f.N1.a22 - f.n_plus * f.n_minus);
    const Mat2C id_minus{0.0, -f.n_minus, -f.n_plus, 0.0};
    CHECK(spectral_norm_2x2(f.R2) <= spectral_norm_2x2(f.N1_inv) * spec.dissipation()(f.t) *
                                         spectral_norm_2x2(id_minus) * (1.0 + 1e-12));
  }
}

TEST_CASE("remainder shrinks with frequency") {
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  double prev = INFINITY;
  for (double xi : {10.0, 20.0, 40.0, 80.0}) {
    double worst = 0.0;
    for (double t : {0.3, 0.9, 1.4, 1.9}) worst = std::max(worst, spectral_norm_2x2(frame_at(spec, t, xi).R2));
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("large-frequency quantity tends to one") {
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  const double q_1e3 = suplarge_quantity(spec, 1e3);
  const double q_1e4 = suplarge_quantity(spec, 1e4);
  CHECK(std::abs(q_1e4 - 1.0) <= 1e-3);
  // excess decays like 1/xi
  CHECK(q_1e3 > 1.0);
  CHECK(q_1e4 > 1.0);
  CHECK(1e4 * (q_1e4 - 1.0) <= 1.5 * 1e3 * (q_1e3 - 1.0));
  const double N = 5.0;
  const double q1 = suplarge_quantity(spec, N);
  const double q2 = suplarge_quantity(spec, 2 * N);
  const double q4 = suplarge_quantity(spec, 4 * N);
  CHECK(q1 > q2);
  CHECK(q2 > q4);
}

TEST_CASE("threshold is mass independent and satisfies the bound on a doubled grid") {
  const auto b = PeriodicCoefficient::constant(1.0, 1.0);
  const auto opts = quick_threshold();
  const auto r1 = find_threshold_N(ModelSpec(b, ConstantMass{1.0}), opts);
  const auto r5 = find_threshold_N(ModelSpec(b, ConstantMass{5.0}), opts);
  CHECK(r1.N == r5.N);
  CHECK(r1.sup_value <= r1.target);
  CHECK(r1.actual_mass_sup <= r1.target);
  bool returned_row_accepted = false;
  for (const auto& row : r1.trace) {
    if (row.N_candidate == r1.N) returned_row_accepted = row.accepted;
    if (row.N_candidate < r1.N) CHECK_FALSE(row.accepted);
  }
  CHECK(returned_row_accepted);

  auto doubled = opts;
  doubled.xi_points = 2 * opts.xi_points;
  doubled.t_points = 2 * opts.t_points;
  CHECK(window_sup(ModelSpec(b, ConstantMass{0.0}), r1.N, doubled) <= r1.target);

  const auto check = check_large_frequency_contraction(ModelSpec(b, ConstantMass{1.0}), r1.N, 10.0,
                                                       32, 32);
  CHECK(check.max_norm <= check.bound + 1e-6);
}

TEST_CASE("threshold search gives up past max_N") {
  auto opts = quick_threshold();
  opts.max_N = 2.0;
  const ModelSpec spec(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{1.0});
  CHECK_THROWS_AS(find_threshold_N(spec, opts), ThresholdSearchError);
}

} // TEST_SUITE
