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
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "kgcert/coefficients.hpp"
#include "kgcert/errors.hpp"
#include "kgcert/model.hpp"
#include "oracles.hpp"
#include "profiles.hpp"

using namespace kgcert;

namespace {

double trapezoid_mean(const PeriodicCoefficient& c, std::size_t n) {
  const double T = c.period();
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += c(T * static_cast<double>(j) / static_cast<double>(n));
  return s / static_cast<double>(n);
}

PeriodicCoefficient sampled_triangle_1024() {
  std::vector<double> v(1024);
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = static_cast<double>(j) / 1024.0;
    v[j] = x < 0.5 ? 0.2 + 1.6 * x : 0.2 + 1.6 * (1.0 - x);
  }
  return PeriodicCoefficient::sampled(1.0, v, Interpolation::Linear);
}

} // namespace

TEST_SUITE("coefficients") {

TEST_CASE("mean of constant and zero-mean sinusoid") {
  CHECK(mean_value(PeriodicCoefficient::constant(2.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mean_value(PeriodicCoefficient::sin_offset(1.0, 1.0, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sampled triangle mean matches trapezoid refinement") {
  const auto c = sampled_triangle_1024();
  CHECK(std::abs(mean_value(c) - trapezoid_mean(c, 2048)) <= 1e-8);
  CHECK(std::abs(mean_value(c) - 0.6) <= 1e-12);
}

TEST_CASE("closed-form means against trapezoid refinement") {
  const PeriodicCoefficient cs[] = {PeriodicCoefficient::sin_offset(3.0, 2.0, 0.7, 0.3),
                                    PeriodicCoefficient::triangle(2.0, 0.1, 0.9),
                                    PeriodicCoefficient::square(1.0, 0.2, 1.0, 0.25)};
  for (const auto& c : cs) CHECK(std::abs(c.mean() - trapezoid_mean(c, 1 << 16)) <= 1e-8);
}

TEST_CASE("lambda primitive") {
  const auto one = PeriodicCoefficient::constant(1.0, 1.0);
  CHECK(lambda_primitive(one, 3.0) == doctest::Approx(std::exp(3.0)).epsilon(1e-14));
  CHECK(lambda_primitive(testing::sampled_triangle(), 0.0) == 1.0);

  const auto c = sampled_triangle_1024();
  const double T = c.period();
  // direct composite Simpson on a fine grid
  const int n = 1 << 16;
  const double t_end = 2.5 * T;
  const double h = t_end / n;
  double s = c(0.0) + c(t_end);
  for (int j = 1; j < n; ++j) s += (j % 2 ? 4.0 : 2.0) * c(j * h);
  const double direct = std::exp(s * h / 3.0);
  CHECK(std::abs(lambda_primitive(c, t_end) / direct - 1.0) <= 1e-8);
  CHECK(std::abs(lambda_primitive(c, t_end) /
                     (lambda_primitive(c, 0.5 * T) * std::exp(2.0 * c.mean() * T)) -
                 1.0) <= 1e-12);
}

TEST_CASE("lambda cocycle over one period") {
  oracle::Uniform u(11);
  for (const auto& c : testing::standard_profiles()) {
    for (int i = 0; i < 20; ++i) {
      const double t = u(0.0, 5.0);
      const double ratio = lambda_primitive(c, t + c.period()) / lambda_primitive(c, t);
      CHECK(std::abs(ratio / std::exp(c.mean() * c.period()) - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("periodicity is bit-exact on dyadic times") {
  oracle::Uniform u(3);
  const PeriodicCoefficient cs[] = {PeriodicCoefficient::sin_offset(1.0, 1.0, 0.5),
                                    testing::sampled_triangle(),
                                    PeriodicCoefficient::square(0.5, 0.0, 2.0)};
  for (const auto& c : cs) {
    for (int i = 0; i < 100; ++i) {
      const double t = std::ldexp(std::floor(u() * 1048576.0), -18); // multiple of 2^-18
      CHECK(c(t + c.period()) == c(t));
    }
  }
}

TEST_CASE("mean is shift invariant") {
  oracle::Uniform u(5);
  for (const auto& c : testing::standard_profiles()) {
    for (int i = 0; i < 10; ++i) {
      CHECK(std::abs(c.shifted(u(-3.0, 3.0)).mean() - c.mean()) <= 1e-10);
    }
  }
}

TEST_CASE("total variation of samples is the sum of consecutive differences") {
  const auto c = PeriodicCoefficient::sampled(1.0, {0.0, 1.0, 0.5, 2.0}, Interpolation::Step);
  CHECK(c.total_variation() == doctest::Approx(1.0 + 0.5 + 1.5 + 2.0));
  CHECK(PeriodicCoefficient::triangle(1.0, 0.2, 1.0).total_variation() == doctest::Approx(1.6));
}

TEST_CASE("step samples jump exactly at sample times") {
  const auto c = PeriodicCoefficient::sampled(1.0, {1.0, 3.0}, Interpolation::Step);
  CHECK(c(0.0) == 1.0);
  CHECK(c(0.4999) == 1.0);
  CHECK(c(0.5) == 3.0);
  CHECK(c.integral(0.0, 1.0) == doctest::Approx(2.0));
  CHECK(c.breakpoints().size() == 2);
}

TEST_CASE("csv loading") {
  std::istringstream good("t,value\n0,1\n0.25,2\n0.5,3\n0.75,2\n");
  const auto c = PeriodicCoefficient::from_csv(good, 1.0, Interpolation::Linear);
  CHECK(c(0.125) == doctest::Approx(1.5));
  CHECK(c.mean() == doctest::Approx(2.0));

  std::istringstream bad_value("0,1\n0.5,abc\n");
  CHECK_THROWS_AS(PeriodicCoefficient::from_csv(bad_value, 1.0, Interpolation::Linear),
                  InvalidCoefficientError);
  std::istringstream non_uniform("0,1\n0.3,2\n");
  CHECK_THROWS_AS(PeriodicCoefficient::from_csv(non_uniform, 1.0, Interpolation::Linear),
                  InvalidCoefficientError);
  std::istringstream empty("");
  CHECK_THROWS_AS(PeriodicCoefficient::from_csv(empty, 1.0, Interpolation::Linear),
                  InvalidCoefficientError);
  CHECK_THROWS_AS(PeriodicCoefficient::sampled(1.0, {1.0, NAN}, Interpolation::Linear),
                  InvalidCoefficientError);
}

TEST_CASE("symbol examples") {
  const auto b = PeriodicCoefficient::constant(1.0, 0.0);
  CHECK(symbol(ModelSpec(b, ConstantMass{0.0}), 0.3, 2.0) == 2.0);
  CHECK(symbol(ModelSpec(b, ConstantMass{1.0}), 0.3, 0.0) == 1.0);
  const auto m1 = PeriodicCoefficient::sin_offset(1.0, 0.0, 1.0, std::numbers::pi / 2);
  const ModelSpec spec(b, PerturbedMass{1.0, 0.5, m1});
  CHECK(symbol(spec, 0.0, 1.0) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
}

TEST_CASE("model assumptions") {
  const auto b = PeriodicCoefficient::constant(1.0, 1.0);
  CHECK_THROWS_AS(ModelSpec(PeriodicCoefficient::sin_offset(1.0, 0.1, 1.0), ConstantMass{1.0}),
                  ModelAssumptionError);
  CHECK_THROWS_AS(ModelSpec(b, ConstantMass{-1.0}), ModelAssumptionError);
  CHECK_THROWS_AS(ModelSpec(b, PerturbedMass{1.0, 0.1, PeriodicCoefficient::constant(2.0, 1.0)}),
                  ModelAssumptionError);
  CHECK_THROWS_AS(ModelSpec(b, PerturbedMass{1.0, 0.1, PeriodicCoefficient::constant(1.0, 0.5)}),
                  ModelAssumptionError);
  CHECK_THROWS_AS(ModelSpec(b, PerturbedMass{1.0, 2.0, PeriodicCoefficient::constant(1.0, -1.0)}),
                  ModelAssumptionError);
  CHECK_THROWS_AS(ModelSpec(b, PerturbedMass{0.0, 0.1, PeriodicCoefficient::constant(1.0, 1.0)}),
                  ModelAssumptionError);

  const ModelSpec zeros(PeriodicCoefficient::sin_offset(1.0, 1.0, 1.0), ConstantMass{1.0});
  CHECK_FALSE(zeros.dissipation_strictly_positive());
  CHECK_THROWS_AS(zeros.require_positive_dissipation(), ModelAssumptionError);
  CHECK(ModelSpec(b, ConstantMass{1.0}).dissipation_strictly_positive());
}

} // TEST_SUITE
