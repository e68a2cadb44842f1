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

#include "kgcert/mat2.hpp"
#include "kgcert/model.hpp"

namespace kgcert {

/// Quadrature layout for the truncated Peano-Baker series.
struct PeanoBakerGrid {
  int panels = 64;          ///< panels across [s, t] (refined at breakpoints)
  int nodes_per_panel = 16; ///< Gauss-Legendre nodes per panel
};

/// I + sum_{l=1..terms} i^l * int_s^t A(t1) int_s^t1 A(t2) ... A(tl).
///
/// Oracle only: every iterated integral is a spectral cumulative integral on
/// a fixed panel grid, so the error is the truncation remainder, roughly
/// (|t-s| sup|A|)^(terms+1) / (terms+1)!. Requires terms <= 30 and
/// |t-s| sup|A| <= 5; violations raise PreconditionError.
Mat2C peano_baker_truncated(const ModelSpec& spec, double s, double t, double xi,
                            int terms, PeanoBakerGrid grid = {});

} // namespace kgcert
