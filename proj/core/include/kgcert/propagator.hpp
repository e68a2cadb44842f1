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

#include <span>
#include <vector>

#include "kgcert/mat2.hpp"
#include "kgcert/model.hpp"

namespace kgcert {

/// Default integration tolerance.
inline constexpr double kDefaultTolerance = 1e-10;

/// A(t, xi) = [[0, <xi>], [<xi>, 2i b(t)]] for D_t V = A V.
Mat2C system_matrix(const ModelSpec& spec, double t, double xi);

struct PropagationResult {
  Mat2C matrix;
  /// Largest accepted local error estimate (absolute, entrywise).
  double local_error_estimate = 0.0;
  long steps_taken = 0;
  long rhs_evaluations = 0;
};

/// Fundamental solution E(t, s, xi) of D_t E = A(t, xi) E, E(s, s) = I.
///
/// Dormand-Prince 5(4) with mixed absolute/relative entrywise error control
/// at `tol`; integration is split at every coefficient breakpoint. t < s
/// integrates backwards. Throws IntegrationError carrying the failure time
/// on step-size underflow, PreconditionError for tol outside [1e-14, 1e-4].
PropagationResult propagate(const ModelSpec& spec, double s, double t,
                            double xi, double tol = kDefaultTolerance);

/// E(times[j], s, xi) for all j in one sweep. `times` must be monotone and
/// lie on one side of s (non-decreasing distance from s).
std::vector<Mat2C> propagate_to(const ModelSpec& spec, double s,
                                std::span<const double> times, double xi,
                                double tol = kDefaultTolerance);

} // namespace kgcert
