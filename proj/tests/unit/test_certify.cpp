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
#include <sstream>

#include "doctest.h"
#include "kgcert/certify.hpp"
#include "kgcert/errors.hpp"
#include "kgcert/export.hpp"
#include "kgcert/propagator.hpp"
#include "oracles.hpp"
#include "profiles.hpp"

using namespace kgcert;

TEST_SUITE("certify") {

TEST_CASE("fit_rate examples") {
  std::vector<double> t;
  std::vector<double> exact;
  std::vector<double> flat;
  std::vector<double> wobble;
  for (int i = 0; i <= 160; ++i) {
    const double x = 0.25 * i;
    t.push_back(x);
    exact.push_back(std::exp(-0.3 * x));
    flat.push_back(2.5);
    wobble.push_back(std::exp(-0.5 * x) * (2.0 + std::sin(x)));
  }
  CHECK(std::abs(fit_rate(t, exact, 0.0).rate - 0.3) <= 1e-9);
  CHECK(std::abs(fit_rate(t, flat, 0.0).rate) <= 1e-12);
  CHECK(std::abs(fit_rate(t, wobble, 10.0).rate - 0.5) <= 1e-2);

  auto bad = exact;
  bad[100] = 0.0;
  CHECK_THROWS_AS(fit_rate(t, bad, 0.0), FitError);
  CHECK_THROWS_AS(fit_rate(t, exact, 39.0), FitError);
}

TEST_CASE("gamma examples") {
  const ModelSpec massless(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{0.0});
  CHECK(gamma_of(massless, 7.3) == 1.0);
  const ModelSpec unit(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{1.0});
  for (double t : {0.0, 0.4, 3.7}) CHECK(gamma_of(unit, t) == doctest::Approx(std::exp(-t)).epsilon(1e-13));

  const ModelSpec zeros(PeriodicCoefficient::sin_offset(1.0, 1.0, 1.0), ConstantMass{1.0});
  CHECK_THROWS_AS(gamma_of(zeros, 1.0), DomainError);
}

TEST_CASE("gamma of a sampled profile matches a refined trapezoid oracle") {
  const ModelSpec spec(testing::sampled_triangle(), PerturbedMass{1.0, 0.2, PeriodicCoefficient::sin_offset(1.0, 0.0, 1.0)});
  auto trapezoid = [&](double t, int n) {
    const double h = t / n;
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double x = j * h;
      const double f = spec.mass_squared(x) / spec.dissipation()(x);
      s += (j == 0 || j == n) ? 0.5 * f : f;
    }
    return std::exp(-s * h);
  };
  for (double t : {0.3, 1.0, 2.6}) {
    const double coarse = trapezoid(t, 1 << 16);
    const double fine = trapezoid(t, 1 << 18);
    const double richardson = fine + (fine - coarse) / 3.0;
    CHECK(std::abs(gamma_of(spec, t) - richardson) <= 1e-8);
  }
  const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0, 5.0};
  const auto curve = gamma_curve(spec, times);
  for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1] + 1e-10);
}

TEST_CASE("critically damped zero frequency decays below e^{-10} at t = 20") {
  const ModelSpec spec(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{1.0});
  CHECK(spectral_norm_2x2(propagate(spec, 0.0, 20.0, 0.0).matrix) < std::exp(-10.0));
  CHECK(spectral_norm_2x2(oracle::constant_propagator(1.0, 1.0, 20.0)) < std::exp(-10.0));
}

TEST_CASE("monodromy decomposition equals direct long integration") {
  oracle::Uniform u(79);
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  for (int i = 0; i < 5; ++i) {
    const double xi = u(0.0, 8.0);
    const double s = u(0.0, 1.0);
    const auto es = propagate(spec, 0.0, s, xi, 1e-12).matrix;
    const auto m = propagate(spec, s, s + 1.0, xi, 1e-12).matrix;
    const auto composed = power(m, 8) * es;
    const auto direct = propagate(spec, 0.0, s + 8.0, xi, 1e-12).matrix;
    CHECK(max_entry_difference(composed, direct) <= 1e-6 * spectral_norm_2x2(direct));
  }
}

TEST_CASE("sup-norm curve is dominated and the verdict replays") {
  const ModelSpec spec(PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5), ConstantMass{1.0});
  ContractionOptions opts;
  opts.t_points = 16;
  opts.xi_points = 32;
  const auto r = find_contraction_k(spec, 7.0, 64, opts);
  const auto cert = assemble_certificate(spec, r, opts);
  DecayOptions d;
  d.small_xi_points = 32;
  d.large_xi_points = 16;
  auto report = sup_norm_curve(spec, cert, 20.0, d);
  fit_report(report);
  CHECK(report.verdict == Verdict::Pass);
  CHECK(report.time_grid.size() == 81);
  for (std::size_t i = 0; i < report.time_grid.size(); ++i) {
    CHECK(report.sup_norm_curve[i] > 0.0);
    CHECK(std::isfinite(report.sup_norm_curve[i]));
    CHECK(report.sup_norm_curve[i] <= report.certified_prefactor *
                                           std::exp(-report.certified_rate * (report.time_grid[i] - report.kT)) *
                                           1.001);
  }
  CHECK(report.fitted_rate >= 0.9 * report.certified_rate);
  CHECK_THROWS_AS(sup_norm_curve(spec, cert, 0.5, d), PreconditionError);

  // large frequencies alone stay under e^{-delta0 (t - T)}
  const auto xs = uniform_grid(cert.N, 4.0 * cert.N, 16);
  for (double xi : xs) {
    for (double t : {2.0, 5.0, 10.0}) {
      const double n = spectral_norm_2x2(propagate(spec, 0.0, t, xi).matrix);
      CHECK(n <= std::exp(-cert.delta0 * (t - 1.0)) + 1e-9);
    }
  }

  std::ostringstream csv;
  write_decay_csv(csv, report);
  CHECK(csv.str().rfind("t,sup_norm,bound\n", 0) == 0);
}

TEST_CASE("decay constants") {
  const ModelSpec spec(PeriodicCoefficient::constant(1.0, 1.0), ConstantMass{1.0});
  // delta0 = delta1 = 0.5: c1 = e^{-0.5 k T}
  const auto cert = assemble_certificate(spec, 5.0, 2, std::exp(-1.0));
  CHECK(cert.delta1 == doctest::Approx(0.5).epsilon(1e-15));
  const auto tc = decay_constants(DecayReport{}, cert, DecayStatement::ConstantMass);
  CHECK(tc.rate == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(tc.C == doctest::Approx(std::exp(0.5 * 2.0)).epsilon(1e-14));
  CHECK(tc.C >= cert.C);
  CHECK(tc.inequalities.size() == 3);
  CHECK(tc.rate_symbol == "delta");
  const auto t2 = decay_constants(DecayReport{}, cert, DecayStatement::PerturbedMass);
  CHECK(t2.rate_symbol == "sigma");
  CHECK(t2.rate_proof_implied);
}

} // TEST_SUITE
