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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kgcert/model.hpp"
#include "kgcert/monodromy.hpp"
#include "kgcert/parallel.hpp"
#include "kgcert/propagator.hpp"

namespace kgcert {

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v);

struct DecayReport {
  std::vector<double> time_grid;      ///< multiples of T/4 up to t_end
  std::vector<double> sup_norm_curve; ///< max over the xi grid of ||E(t, 0, xi)||
  std::vector<double> bound_curve;    ///< C exp(-delta (t - kT))
  std::vector<double> xi_grid;
  double fitted_rate = 0.0;
  double fit_residual = 0.0;
  double burn_in = 0.0;
  double certified_rate = 0.0;        ///< min(delta0, delta1)
  double certified_prefactor = 0.0;   ///< max(e^{delta0 T}, e^{delta1 kT})
  double kT = 0.0;
  double worst_ratio = 0.0;           ///< max of curve / bound
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> failed_xi;      ///< frequencies whose propagation failed
  std::optional<std::vector<double>> gamma_curve;
};

struct DecayOptions {
  std::size_t small_xi_points = 256; ///< on [0, N]
  std::size_t large_xi_points = 64;  ///< on [N, large_factor N]
  double large_factor = 4.0;
  double tol = kDefaultTolerance;
  ParallelFor parallel = serial_executor();
};

/// Union frequency grid: small_xi_points on [0, N] and large_xi_points on
/// [N, large_factor N], N listed once.
std::vector<double> decay_frequency_grid(double N, const DecayOptions& opts = {});

/// sup over the frequency grid of ||E(t, 0, xi)|| at t = j T/4 <= t_end,
/// using E(l T + s, 0) = M(s)^l E(s, 0). Fills the bound curve and the
/// verdict (Pass iff curve <= C e^{-delta (t - kT)} (1 + 1e-3) at every grid
/// time, Inconclusive if any frequency failed to propagate). Requires
/// t_end >= 10 kT. The fit fields are left at zero.
DecayReport sup_norm_curve(const ModelSpec& spec, const ContractionCertificate& cert,
                           double t_end, const DecayOptions& opts = {});

struct RateFit {
  double rate = 0.0;     ///< positive means decay
  double residual = 0.0; ///< RMS residual of log(value)
  std::size_t points = 0;
};

/// Least-squares slope of log(values) against times for times >= burn_in.
/// FitError if fewer than 8 points remain or any used value is <= 0.
RateFit fit_rate(std::span<const double> times, std::span<const double> values, double burn_in);

/// Runs fit_rate on the report with burn-in 2 kT (or the given value) and
/// stores the result.
void fit_report(DecayReport& report, std::optional<double> burn_in = std::nullopt);

/// gamma(t) = exp(-int_0^t m^2 / b). DomainError unless b > 0 on the
/// validation grid.
double gamma_of(const ModelSpec& spec, double t);
std::vector<double> gamma_curve(const ModelSpec& spec, std::span<const double> times);

enum class DecayStatement { ConstantMass, PerturbedMass };

struct DecayConstants {
  DecayStatement which = DecayStatement::ConstantMass;
  std::string rate_symbol; ///< "delta" or "sigma"
  double rate = 0.0;       ///< min(delta0, delta1)
  double C = 0.0;          ///< max(e^{delta0 T}, e^{delta1 kT})
  double delta0 = 0.0;
  double delta1 = 0.0;
  bool rate_proof_implied = false; ///< sigma has no closed form of its own
  std::vector<std::string> inequalities;
};

DecayConstants decay_constants(const DecayReport& report, const ContractionCertificate& cert,
                             DecayStatement which);

} // namespace kgcert
