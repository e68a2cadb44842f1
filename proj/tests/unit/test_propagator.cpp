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
#include "kgcert/mat2.hpp"
#include "kgcert/peano_baker.hpp"
#include "kgcert/propagator.hpp"
#include "oracles.hpp"
#include "profiles.hpp"

using namespace kgcert;

namespace {

const cplx I{0.0, 1.0};

Mat2C random_matrix(oracle::Uniform& u, double scale = 1.0) {
  auto c = [&] { return cplx{u(-scale, scale), u(-scale, scale)}; };
  return {c(), c(), c(), c()};
}

double max_abs(const Mat2C& m) {
  return std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a21), std::abs(m.a22)});
}

ModelSpec constant_spec(double b0, double m0) {
  return ModelSpec(PeriodicCoefficient::constant(1.0, b0), ConstantMass{m0});
}

} // namespace

TEST_SUITE("mat2") {

TEST_CASE("eigenvalue examples") {
  const auto d = eigenvalues_2x2({2.0, 0.0, 0.0, -3.0});
  CHECK(((d[0] == cplx{2.0} && d[1] == cplx{-3.0}) || (d[0] == cplx{-3.0} && d[1] == cplx{2.0})));
  const auto p = eigenvalues_2x2({0.0, 1.0, 1.0, 0.0});
  CHECK(std::abs(std::abs(p[0]) - 1.0) < 1e-15);
  CHECK(std::abs(p[0] + p[1]) < 1e-15);
}

TEST_CASE("eigenvalue residuals and pairing on random matrices") {
  oracle::Uniform u(17);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(u);
    const auto ev = eigenvalues_2x2(m);
    for (const auto& l : ev) {
      CHECK(std::abs(l * l - m.trace() * l + m.det()) <= 1e-12 * (1.0 + std::norm(l)));
    }
    CHECK(std::abs(ev[0] * ev[1] - m.det()) <= 1e-12 * std::abs(m.det()));
  }
}

TEST_CASE("spectral norm") {
  CHECK(spectral_norm_2x2(Mat2C::identity()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(spectral_norm_2x2({0.0, 2.0, 0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  oracle::Uniform u(19);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(u);
    const double n = spectral_norm_2x2(m);
    CHECK(std::abs(n - oracle::power_iteration_norm(m)) <= 1e-10 * std::max(1.0, n));
    CHECK(n >= spectral_radius_2x2(m) * (1.0 - 1e-12));
  }
}

TEST_CASE("power by squaring matches repeated products") {
  oracle::Uniform u(23);
  const auto m = random_matrix(u, 0.7);
  Mat2C p = Mat2C::identity();
  for (unsigned k = 0; k <= 13; ++k) {
    CHECK(max_entry_difference(power(m, k), p) <= 1e-14);
    p = p * m;
  }
}

} // TEST_SUITE

TEST_SUITE("propagator") {

TEST_CASE("system matrix examples") {
  const auto a = system_matrix(constant_spec(0.0, 1.0), 0.7, 0.0);
  CHECK(max_entry_difference(a, {0.0, 1.0, 1.0, 0.0}) == 0.0);
  const auto b = system_matrix(constant_spec(1.0, 0.0), 0.2, 3.0);
  CHECK(max_entry_difference(b, {0.0, 3.0, 3.0, 2.0 * I}) == 0.0);
  CHECK(b.trace() == 2.0 * I);

  const ModelSpec pert(PeriodicCoefficient::constant(1.0, 1.0),
                       PerturbedMass{1.0, 0.5, PeriodicCoefficient::sin_offset(1.0, 0.0, 1.0)});
  oracle::Uniform u(29);
  for (int i = 0; i < 50; ++i) {
    const double t = u(0.0, 3.0);
    const double xi = u(0.0, 10.0);
    const auto m = system_matrix(pert, t, xi);
    CHECK(m.a12 == cplx{symbol(pert, t, xi)});
    CHECK(m.a21 == cplx{symbol(pert, t, xi)});
  }
}

TEST_CASE("t = s gives the identity") {
  const auto r = propagate(constant_spec(1.0, 1.0), 0.4, 0.4, 2.0);
  CHECK(max_entry_difference(r.matrix, Mat2C::identity()) == 0.0);
}

TEST_CASE("underdamped constant coefficients match the closed form") {
  // b0 = 0.5, m0 = 1, xi = 0: roots -0.5 +- i sqrt(0.75)
  const auto spec = constant_spec(0.5, 1.0);
  for (double t : {0.5, 1.0, 3.0, 7.25}) {
    const auto r = propagate(spec, 0.0, t, 0.0);
    CHECK(max_entry_difference(r.matrix, oracle::constant_propagator(1.0, 0.5, t)) <= 1e-9);
  }
}

TEST_CASE("constant coefficients across dissipations and frequencies") {
  for (double b0 : {0.3, 1.0}) {
    for (double xi : {0.0, 2.0}) {
      const auto spec = constant_spec(b0, 1.0);
      for (double t : {0.5, 1.0, 3.0}) {
        const auto r = propagate(spec, 0.0, t, xi, 1e-12);
        const double w = std::hypot(xi, 1.0);
        CHECK(max_entry_difference(r.matrix, oracle::constant_propagator(w, b0, t)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("tolerance and input preconditions") {
  const auto spec = constant_spec(1.0, 1.0);
  CHECK_THROWS_AS(propagate(spec, 0.0, 1.0, 1.0, 1e-3), PreconditionError);
  CHECK_THROWS_AS(propagate(spec, 0.0, 1.0, 1.0, 1e-15), PreconditionError);
  CHECK_THROWS_AS(propagate(spec, 0.0, INFINITY, 1.0), PreconditionError);
}

TEST_CASE("Liouville, flow, inverse and translation invariance") {
  oracle::Uniform u(31);
  for (const auto& b : testing::standard_profiles()) {
    const ModelSpec spec(b, ConstantMass{1.0});
    for (int i = 0; i < 10; ++i) {
      const double s = u(0.0, 2.0);
      const double r = s + u(0.0, 1.5);
      const double t = r + u(0.0, 1.5);
      const double xi = u(0.0, 15.0);
      const double tol = 1e-10;
      const auto ets = propagate(spec, s, t, xi, tol).matrix;
      const auto etr = propagate(spec, r, t, xi, tol).matrix;
      const auto ers = propagate(spec, s, r, xi, tol).matrix;
      const auto est = propagate(spec, t, s, xi, tol).matrix;
      const auto shifted = propagate(spec, s + 1.0, t + 1.0, xi, tol).matrix;
      const double span = std::max(1.0, t - s);
      CHECK(max_entry_difference(ets, etr * ers) <= 10.0 * tol * span);
      CHECK(max_entry_difference(ets * est, Mat2C::identity()) <= 10.0 * tol * span);
      CHECK(max_entry_difference(ets, shifted) <= 10.0 * tol * span);
      const double expected = std::exp(-2.0 * b.integral(s, t));
      CHECK(std::abs(ets.det() - expected) <= 1e-8 * expected);
    }
  }
}

TEST_CASE("energy is non-increasing and E(s, 0) is a contraction") {
  oracle::Uniform u(37);
  for (const auto& b : testing::standard_profiles()) {
    const ModelSpec spec(b, ConstantMass{0.5});
    const double xi = u(0.0, 8.0);
    std::vector<double> times;
    for (int j = 1; j <= 200; ++j) times.push_back(0.02 * j);
    const auto es = propagate_to(spec, 0.0, times, xi);
    const cplx v1{u(-1.0, 1.0), u(-1.0, 1.0)};
    const cplx v2{u(-1.0, 1.0), u(-1.0, 1.0)};
    double prev = 0.5 * (std::norm(v1) + std::norm(v2));
    for (std::size_t j = 0; j < es.size(); ++j) {
      const cplx a = es[j].a11 * v1 + es[j].a12 * v2;
      const cplx c = es[j].a21 * v1 + es[j].a22 * v2;
      const double e = 0.5 * (std::norm(a) + std::norm(c));
      CHECK(e <= prev + 1e-8);
      prev = e;
      if (times[j] <= 1.0) CHECK(spectral_norm_2x2(es[j]) <= 1.0 + 1e-6);
    }
  }
}

TEST_CASE("step coefficients are integrated across jumps") {
  const ModelSpec spec(PeriodicCoefficient::square(1.0, 0.2, 1.4, 0.3), ConstantMass{1.0});
  const auto full = propagate(spec, 0.0, 1.0, 2.0, 1e-12).matrix;
  // piecewise-constant oracle
  const double w = std::hypot(2.0, 1.0);
  const auto piece = oracle::constant_propagator(w, 0.2, 0.7) * oracle::constant_propagator(w, 1.4, 0.3);
  CHECK(max_entry_difference(full, piece) <= 1e-9);
}

TEST_CASE("backward integration") {
  const auto spec = constant_spec(0.4, 1.0);
  const auto back = propagate(spec, 2.0, 0.5, 1.5, 1e-12).matrix;
  const auto fwd = propagate(spec, 0.5, 2.0, 1.5, 1e-12).matrix;
  CHECK(max_entry_difference(back * fwd, Mat2C::identity()) <= 1e-9);
}

} // TEST_SUITE

TEST_SUITE("peano_baker") {

TEST_CASE("zero terms is the identity") {
  CHECK(max_entry_difference(peano_baker_truncated(constant_spec(1.0, 1.0), 0.0, 0.5, 1.0, 0),
                             Mat2C::identity()) == 0.0);
}

TEST_CASE("constant A matches the exponential") {
  const auto spec = constant_spec(0.7, 1.0);
  const double xi = 1.3;
  const auto pb = peano_baker_truncated(spec, 0.2, 0.7, xi, 20);
  CHECK(max_entry_difference(pb, oracle::constant_propagator(std::hypot(xi, 1.0), 0.7, 0.5)) <= 1e-10);
}

TEST_CASE("window precondition") {
  CHECK_THROWS_AS(peano_baker_truncated(constant_spec(1.0, 1.0), 0.0, 1.0, 10.0, 10),
                  PreconditionError);
  CHECK_THROWS_AS(peano_baker_truncated(constant_spec(1.0, 1.0), 0.0, 0.1, 1.0, 31),
                  PreconditionError);
}

TEST_CASE("agrees with the adaptive propagator") {
  oracle::Uniform u(41);
  for (const auto& b : testing::standard_profiles()) {
    const ModelSpec spec(b, ConstantMass{1.0});
    for (int i = 0; i < 4; ++i) {
      const double xi = u(0.0, 1.5);
      const double s = u(0.0, 1.0);
      const double sup_a = std::hypot(xi, 1.0) + 2.0 * b.summary().max;
      const double t = s + u(0.2, 1.0) * 2.0 / sup_a;
      const auto pb = peano_baker_truncated(spec, s, t, xi, 20);
      const auto rk = propagate(spec, s, t, xi, 1e-12).matrix;
      CHECK(max_entry_difference(pb, rk) <= 1e-8);
    }
  }
}

} // TEST_SUITE
