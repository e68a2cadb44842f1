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

#include "kgcert/model.hpp"
#include "kgcert/monodromy.hpp"
#include "kgcert/parallel.hpp"
#include "kgcert/propagator.hpp"

namespace kgcert {

/// Admissible size of a mass perturbation m^2 = m0^2 + epsilon * m1(t).
struct EpsilonBound {
  double epsilon_max = 0.0;
  double m0 = 0.0;
  int k = 0;
  double period = 0.0;
  double c1 = 0.0;
  double N = 0.0;
  double beta = 0.0;
  double delta1 = 0.0;
  /// c1 ln(1/c1) exp(-(<N>_{m0} + 2 beta) k T)
  double w_argument = 0.0;
  /// w_argument underflowed or epsilon_max = 0: true but uninformative.
  bool vacuous = false;
  /// log(LHS) - log(RHS) of the rough inequality at xi = 0 and xi = N.
  double audit_log_margin_zero = 0.0;
  double audit_log_margin_N = 0.0;
  bool audit_pass = false;
};

/// log LHS - log RHS of
///   (C_eps/delta1) e^{C_eps kT} e^{(<xi>_{m0} + 2 beta) kT} (1/c1 - 1) < 1 - c1
/// with C_eps = epsilon / <xi>_{m0}. Negative means the inequality holds.
double rough_inequality_log_margin(const ContractionCertificate& cert, double m0, double epsilon,
                                   double xi);

/// Largest epsilon for which the rough inequality holds at the single
/// frequency xi: (<xi>_{m0}/kT) W(c1 ln(1/c1) e^{-(<xi>_{m0} + 2 beta) kT}).
double epsilon_at_frequency(const ContractionCertificate& cert, double m0, double xi);

/// epsilon_max = (m0 / kT) W(w_argument), audited at xi = 0 and xi = N.
/// Requires 0 < c1 < 1 and m0 > 0 (PreconditionError otherwise).
EpsilonBound epsilon_bound(const ContractionCertificate& cert, double m0);

/// Upper bound for ||E_eps(t, s, xi) - E_0(t, s, xi)|| from the Gronwall
/// estimate, with ||E_0(tau, s)|| bounded by the certified decay curve
/// (capped at 1), ||A_eps - A_0|| <= eps/<xi>_{m0} and
/// ||A_eps|| <= <xi>_{m0} + eps/<xi>_{m0} + 2 b. Requires t >= s and that
/// both models share b, T and m0, with spec_0 of constant mass.
double gronwall_difference_bound(const ModelSpec& spec_eps, const ModelSpec& spec_0,
                                 const ContractionCertificate& cert, double s, double t,
                                 double xi);

struct PerturbedContraction {
  bool ok = false;
  double worst = 0.0; ///< max ||M_eps(s, xi)^k|| over the certificate grid
  double worst_t = 0.0;
  double worst_xi = 0.0;
};

/// Scans ||M_eps^k|| on the certificate's t_points x xi_points grid over
/// [0, T) x [0, N]; ok iff the max is below 1 - 1e-6. Never throws on a
/// large epsilon; the result is reported.
PerturbedContraction verify_perturbed_contraction(const ModelSpec& spec_eps,
                                                  const ContractionCertificate& cert,
                                                  double tol = kDefaultTolerance,
                                                  const ParallelFor& parallel = serial_executor());

} // namespace kgcert
