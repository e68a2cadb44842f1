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

#include "kgcert/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgcert/errors.hpp"

namespace kgcert {

ModelSpec::ModelSpec(PeriodicCoefficient b, ConstantMass mass)
    : b_(std::move(b)), mass_(mass) {
  validate();
}

ModelSpec::ModelSpec(PeriodicCoefficient b, PerturbedMass mass)
    : b_(std::move(b)), mass_(std::move(mass)) {
  validate();
}

void ModelSpec::validate() {
  const auto bs = b_.summary();
  if (bs.min < 0.0) {
    throw ModelAssumptionError("dissipation must be non-negative (min on grid " +
                               std::to_string(bs.min) + ")");
  }
  b_min_ = bs.min;
  breaks_ = b_.breakpoints();

  if (const auto* c = std::get_if<ConstantMass>(&mass_)) {
    if (!(c->m0 >= 0.0) || !std::isfinite(c->m0)) {
      throw ModelAssumptionError("constant mass m0 must be finite and >= 0");
    }
    return;
  }

  const auto& p = std::get<PerturbedMass>(mass_);
  if (!(p.m0 > 0.0) || !std::isfinite(p.m0)) {
    throw ModelAssumptionError("perturbed mass requires m0 > 0");
  }
  if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) {
    throw ModelAssumptionError("perturbation size epsilon must be >= 0");
  }
  if (std::abs(p.m1.period() - period()) > 1e-12 * period()) {
    throw ModelAssumptionError("mass perturbation period differs from dissipation period");
  }
  const auto ms = p.m1.summary();
  if (std::abs(ms.sup_abs - 1.0) > 1e-12) {
    throw ModelAssumptionError("mass perturbation must satisfy sup|m1| = 1 (got " +
                               std::to_string(ms.sup_abs) + ")");
  }
  if (!(p.m0 * p.m0 + p.epsilon * ms.min > 0.0)) {
    throw ModelAssumptionError("m0^2 + epsilon*m1(t) must stay positive");
  }
  breaks_.insert(breaks_.end(), p.m1.breakpoints().begin(), p.m1.breakpoints().end());
  std::sort(breaks_.begin(), breaks_.end());
  breaks_.erase(std::unique(breaks_.begin(), breaks_.end()), breaks_.end());
}

double ModelSpec::m0() const noexcept {
  return std::visit([](const auto& m) { return m.m0; }, mass_);
}

double ModelSpec::epsilon() const noexcept {
  if (const auto* p = std::get_if<PerturbedMass>(&mass_)) return p->epsilon;
  return 0.0;
}

const PeriodicCoefficient* ModelSpec::mass_perturbation() const noexcept {
  if (const auto* p = std::get_if<PerturbedMass>(&mass_)) return &p->m1;
  return nullptr;
}

double ModelSpec::mass_squared(double t) const {
  if (const auto* p = std::get_if<PerturbedMass>(&mass_)) {
    return p->m0 * p->m0 + p->epsilon * p->m1(t);
  }
  const double m0 = std::get<ConstantMass>(mass_).m0;
  return m0 * m0;
}

void ModelSpec::require_positive_dissipation() const {
  if (!dissipation_strictly_positive()) {
    throw ModelAssumptionError("dissipation must be strictly positive for this operation");
  }
}

ModelSpec ModelSpec::constant_mass_reference() const {
  return ModelSpec(b_, ConstantMass{m0()});
}

ModelSpec ModelSpec::with_epsilon(double epsilon) const {
  const auto* p = std::get_if<PerturbedMass>(&mass_);
  if (p == nullptr) {
    throw PreconditionError("with_epsilon requires a perturbed-mass model");
  }
  return ModelSpec(b_, PerturbedMass{p->m0, epsilon, p->m1});
}

ModelSpec ModelSpec::with_constant_mass(double m0) const {
  return ModelSpec(b_, ConstantMass{m0});
}

double symbol(const ModelSpec& spec, double t, double xi) {
  const double radicand = xi * xi + spec.mass_squared(t);
  if (radicand < 0.0) {
    throw ModelAssumptionError("negative radicand in symbol at t = " + std::to_string(t));
  }
  if (spec.has_constant_mass()) return japanese_bracket(xi, spec.m0());
  return std::sqrt(radicand);
}

} // namespace kgcert
