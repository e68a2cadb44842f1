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

#include <iosfwd>
#include <span>
#include <string>

#include "kgcert/certify.hpp"
#include "kgcert/highfreq.hpp"
#include "kgcert/monodromy.hpp"

namespace kgcert {

/// Shortest round-trip-safe text: printf "%.17g".
std::string format_double(double x);

// CSV writers: comma-separated, one header row, LF line endings.

/// t,xi,re_eig1,im_eig1,re_eig2,im_eig2,rho,norm,class
void write_monodromy_scan_csv(std::ostream& out, std::span<const MonodromySample> samples);

/// N_candidate,sup_value,accepted
void write_threshold_trace_csv(std::ostream& out, std::span<const ThresholdTraceRow> rows);

/// t,sup_norm,bound
void write_decay_csv(std::ostream& out, const DecayReport& report);

} // namespace kgcert
