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

#include "kgcert/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kgcert/errors.hpp"
#include "kgcert/lambert_w.hpp"

namespace kgcert {
namespace {

double log_w_argument(const ContractionCertificate& cert, double bracket) {
  const double kT = cert.k * cert.period;
  return std::log(cert.c1) + std::log(std::log(1.0 / cert.c1)) -
         (bracket + 2.0 * cert.beta) * kT;
}

void require_certificate(const ContractionCertificate& cert, double m0) {
  if (!(cert.c1 > 0.0 && cert.c1 < 1.0) || cert.k < 1 || !(cert.period > 0.0)) {
    throw PreconditionError("perturbation bounds need a valid contraction certificate");
  }
  if (!(m0 > 0.0)) throw PreconditionError("perturbation bounds need m0 > 0");
}

} // namespace

double rough_inequality_log_margin(const ContractionCertificate& cert, double m0, double epsilon,
                                   double xi) {
  require_certificate(cert, m0);
  const double kT = cert.k * cert.period;
  const double bracket = japanese_bracket(xi, m0);
  const double c_eps = epsilon / bracket;
  if (c_eps == 0.0) return -std::numeric_limits<double>::infinity();
  const double log_lhs = std::log(c_eps / cert.delta1) + c_eps * kT +
                         (bracket + 2.0 * cert.beta) * kT + std::log(1.0 / cert.c1 - 1.0);
  return log_lhs - std::log(1.0 - cert.c1);
}

double epsilon_at_frequency(const ContractionCertificate& cert, double m0, double xi) {
  require_certificate(cert, m0);
  const double bracket = japanese_bracket(xi, m0);
  const double arg = std::exp(log_w_argument(cert, bracket));
  return bracket / (cert.k * cert.period) * lambert_w0(arg);
}

EpsilonBound epsilon_bound(const ContractionCertificate& cert, double m0) {
  require_certificate(cert, m0);
  EpsilonBound out;
  out.m0 = m0;
  out.k = cert.k;
  out.period = cert.period;
  out.c1 = cert.c1;
  out.N = cert.N;
  out.beta = cert.beta;
  out.delta1 = cert.delta1;
  out.w_argument = std::exp(log_w_argument(cert, japanese_bracket(cert.N, m0)));
  out.epsilon_max = m0 / (cert.k * cert.period) * lambert_w0(out.w_argument);
  out.vacuous = out.w_argument == 0.0 || out.epsilon_max == 0.0;
  out.audit_log_margin_zero = rough_inequality_log_margin(cert, m0, out.epsilon_max, 0.0);
  out.audit_log_margin_N = rough_inequality_log_margin(cert, m0, out.epsilon_max, cert.N);
  out.audit_pass = out.audit_log_margin_zero < 0.0 && out.audit_log_margin_N < 0.0;
  return out;
}

double gronwall_difference_bound(const ModelSpec& spec_eps, const ModelSpec& spec_0,
                                 const ContractionCertificate& cert, double s, double t,
                                 double xi) {
  if (!(t >= s)) throw PreconditionError("gronwall_difference_bound requires t >= s");
  if (!spec_0.has_constant_mass() || spec_eps.m0() != spec_0.m0() ||
      spec_eps.period() != spec_0.period()) {
    throw PreconditionError("gronwall_difference_bound: models must share T and m0");
  }
  const double eps = spec_eps.epsilon();
  if (eps == 0.0) return 0.0;
  const double bracket = japanese_bracket(xi, spec_0.m0());
  const double c_eps = eps / bracket;
  const double span = t - s;

  // int_s^t min(1, exp(-delta (tau - s - lag))) dtau
  const bool small = std::abs(xi) <= cert.N;
  const double delta = small ? cert.delta1 : cert.delta0;
  const double lag = small ? cert.k * cert.period : cert.period;
  double curve_integral = std::min(span, lag);
  if (span > lag) curve_integral += -std::expm1(-delta * (span - lag)) / delta;

  const double exponent = (bracket + c_eps) * span + 2.0 * spec_eps.dissipation().integral(s, t);
  return c_eps * curve_integral * std::exp(exponent);
}

PerturbedContraction verify_perturbed_contraction(const ModelSpec& spec_eps,
                                                  const ContractionCertificate& cert,
                                                  double tol, const ParallelFor& parallel) {
  if (cert.k < 1 || !(cert.N > 0.0) || cert.t_points == 0 || cert.xi_points < 2) {
    throw PreconditionError("verify_perturbed_contraction needs a complete certificate");
  }
  const auto grid = build_monodromy_grid(spec_eps, periodic_grid(spec_eps.period(), cert.t_points),
                                         uniform_grid(0.0, cert.N, cert.xi_points), tol, parallel);
  const auto worst = max_power_norm(grid, static_cast<unsigned>(cert.k));
  PerturbedContraction out;
  out.worst = worst.value;
  out.worst_t = worst.t;
  out.worst_xi = worst.xi;
  out.ok = std::isfinite(worst.value) && worst.value < 1.0 - 1e-6;
  return out;
}

} // namespace kgcert
