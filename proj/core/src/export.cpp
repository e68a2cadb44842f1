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

#include "kgcert/export.hpp"

#include <cstdio>
#include <ostream>

namespace kgcert {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_monodromy_scan_csv(std::ostream& out, std::span<const MonodromySample> samples) {
  out << "t,xi,re_eig1,im_eig1,re_eig2,im_eig2,rho,norm,class\n";
  for (const auto& s : samples) {
    out << format_double(s.t) << ',' << format_double(s.xi) << ','
        << format_double(s.eigenvalues[0].real()) << ',' << format_double(s.eigenvalues[0].imag())
        << ',' << format_double(s.eigenvalues[1].real()) << ','
        << format_double(s.eigenvalues[1].imag()) << ',' << format_double(s.spectral_radius)
        << ',' << format_double(s.norm) << ',' << to_string(s.cls) << '\n';
  }
}

void write_threshold_trace_csv(std::ostream& out, std::span<const ThresholdTraceRow> rows) {
  out << "N_candidate,sup_value,accepted\n";
  for (const auto& r : rows) {
    out << format_double(r.N_candidate) << ',' << format_double(r.sup_value) << ','
        << (r.accepted ? "true" : "false") << '\n';
  }
}

void write_decay_csv(std::ostream& out, const DecayReport& report) {
  out << "t,sup_norm,bound\n";
  for (std::size_t i = 0; i < report.time_grid.size(); ++i) {
    out << format_double(report.time_grid[i]) << ',' << format_double(report.sup_norm_curve[i])
        << ',' << format_double(report.bound_curve[i]) << '\n';
  }
}

} // namespace kgcert
