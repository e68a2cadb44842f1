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

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "kgcert/coefficients.hpp"

namespace kgcert {

/// m(t) = m0.
struct ConstantMass {
  double m0 = 0.0;
};

/// m(t)^2 = m0^2 + epsilon * m1(t) with sup |m1| = 1.
struct PerturbedMass {
  double m0 = 0.0;
  double epsilon = 0.0;
  PeriodicCoefficient m1;
};

/// Damped Klein-Gordon problem instance: dissipation b, mass, shared period.
///
/// Construction validates the standing assumptions on the validation grid:
/// matching periods, b >= 0, and for a perturbed mass m0 > 0, epsilon >= 0,
/// sup |m1| = 1 (to 1e-12) and m0^2 + epsilon*m1 > 0. Violations raise
/// ModelAssumptionError. A dissipation with zeros is accepted, but
/// dissipation_strictly_positive() reports false and decay-mode callers
/// reject it through require_positive_dissipation().
class ModelSpec {
public:
  ModelSpec(PeriodicCoefficient b, ConstantMass mass);
  ModelSpec(PeriodicCoefficient b, PerturbedMass mass);

  const PeriodicCoefficient& dissipation() const noexcept { return b_; }
  double period() const noexcept { return b_.period(); }
  /// Mean of the dissipation.
  double beta() const noexcept { return b_.mean(); }

  bool has_constant_mass() const noexcept {
    return std::holds_alternative<ConstantMass>(mass_);
  }
  double m0() const noexcept;
  double epsilon() const noexcept;
  /// m1 for a perturbed mass, nullptr otherwise.
  const PeriodicCoefficient* mass_perturbation() const noexcept;

  double mass_squared(double t) const;

  bool dissipation_strictly_positive() const noexcept { return b_min_ > 0.0; }
  double dissipation_min() const noexcept { return b_min_; }
  void require_positive_dissipation() const;

  /// Jumps and kinks of every coefficient, sorted, in [0, T).
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }

  /// Same dissipation with m(t) = m0 (the unperturbed reference problem).
  ModelSpec constant_mass_reference() const;
  /// Same model with a different perturbation size.
  ModelSpec with_epsilon(double epsilon) const;
  ModelSpec with_constant_mass(double m0) const;

private:
  void validate();

  PeriodicCoefficient b_;
  std::variant<ConstantMass, PerturbedMass> mass_;
  double b_min_ = 0.0;
  std::vector<double> breaks_;
};

/// <xi>_{m(t)} = sqrt(xi^2 + m(t)^2).
double symbol(const ModelSpec& spec, double t, double xi);

/// sqrt(xi^2 + m^2) for a constant mass.
inline double japanese_bracket(double xi, double m) {
  return std::hypot(xi, m);
}

} // namespace kgcert
