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
#include <vector>

#include "kgcert/mat2.hpp"
#include "kgcert/model.hpp"
#include "kgcert/parallel.hpp"
#include "kgcert/propagator.hpp"

// Large-frequency diagonalisation.
//
// After the constant unitary change of variables V0 = M^{-1} V the system
// reads D_t V0 = (D + R) V0 with D = diag(<xi>, -<xi>), R = i b(t) [[1,1],[1,1]].
// With D1 = D + diag R and R1 = R - diag R, the corrector
//   N1 = [[1, n-], [n+, 1]],   D_t N1 = [D1, N1] + R1,   N1(0) = I
// has
//   n+-(t) = - int_0^t exp(-+ 2i int_s^t <xi>_{m(r)} dr) b(s) ds
// and V1 = N1^{-1} V0 solves D_t V1 = (D1 + R2) V1 with
// R2 = -N1^{-1} R1 (I - N1).

namespace kgcert {

struct CorrectorPair {
  cplx plus;
  cplx minus;
};

/// Fine-grid points per period for frequency xi: max(4096, 128 ceil(<xi> T)).
std::size_t corrector_points_per_period(const ModelSpec& spec, double xi);

/// n+- on the uniform grid tau_i = i * t_end / intervals, i = 0..intervals.
///
/// The oscillatory integrals use an exact rule for a linear phase and a
/// linear dissipation on every sub-interval; the phase int_0^tau <xi> is
/// exact for a constant mass and Simpson-accumulated otherwise.
class CorrectorTable {
public:
  CorrectorTable(const ModelSpec& spec, double xi, double t_end, std::size_t intervals);

  std::size_t intervals() const noexcept { return plus_.size() - 1; }
  double step() const noexcept { return step_; }
  double time(std::size_t i) const { return static_cast<double>(i) * step_; }
  cplx plus(std::size_t i) const { return plus_[i]; }
  cplx minus(std::size_t i) const { return minus_[i]; }

private:
  double step_;
  std::vector<cplx> plus_;
  std::vector<cplx> minus_;
};

/// (n+(t, xi), n-(t, xi)) for t in [0, 2T].
CorrectorPair n_pm(const ModelSpec& spec, double t, double xi);

inline constexpr double kFrameDeterminantGuard = 0.1;

struct DiagonalizationFrame {
  double t = 0.0;
  double xi = 0.0;
  cplx n_plus;
  cplx n_minus;
  Mat2C N1;
  Mat2C N1_inv;
  Mat2C R2;
};

/// Frame from given corrector values; FrameError if |det N1| < 0.1.
DiagonalizationFrame make_frame(double t, double xi, double b, cplx n_plus, cplx n_minus);
DiagonalizationFrame frame_at(const ModelSpec& spec, double t, double xi);

/// max over t in uniform_grid(0, T, t_points) of
///   ||N1(t + T)|| exp(int_t^{t+T} ||R2||) ||N1^{-1}(t)||.
double suplarge_quantity(const ModelSpec& spec, double xi, std::size_t t_points = 64);

struct ThresholdOptions {
  double start = 1.0;
  double window = 10.0;         ///< verification window [N, window * N]
  std::size_t xi_points = 128;
  std::size_t t_points = 64;
  double max_N = 1e6;
  double resolution = 1e-3;     ///< relative bisection width
  ParallelFor parallel = serial_executor();
};

struct ThresholdTraceRow {
  double N_candidate = 0.0;
  double sup_value = 0.0;
  bool accepted = false;
};

struct ThresholdResult {
  double N = 0.0;
  double sup_value = 0.0;       ///< massless window sup at N
  double actual_mass_sup = 0.0; ///< same window under the model's own mass
  double target = 0.0;          ///< exp(beta T / 2)
  double xi_max_checked = 0.0;
  std::size_t xi_points = 0;
  std::size_t t_points = 0;
  double window = 0.0;
  std::vector<ThresholdTraceRow> trace;
};

/// max of suplarge_quantity over uniform_grid(N, window N, xi_points);
/// +inf if a frame is singular anywhere.
double window_sup(const ModelSpec& spec, double N, const ThresholdOptions& opts);

/// Frequency threshold N: doubling from opts.start until the window sup is
/// <= exp(beta T / 2), then bisection to opts.resolution. The search uses
/// the massless symbol, which bounds every constant mass because
/// <xi>_{m0} >= |xi|; the accepted window is re-checked under the model's
/// own mass. Throws ThresholdSearchError past max_N or if the re-check fails.
ThresholdResult find_threshold_N(const ModelSpec& spec, const ThresholdOptions& opts = {});

struct LargeFrequencyCheck {
  double max_norm = 0.0;
  double bound = 0.0; ///< exp(-beta T / 2)
  double worst_t = 0.0;
  double worst_xi = 0.0;
};

/// max ||M(t, xi)|| over t in periodic_grid(T, t_points) and
/// xi in uniform_grid(N, window N, xi_points).
LargeFrequencyCheck check_large_frequency_contraction(
    const ModelSpec& spec, double N, double window = 10.0, std::size_t t_points = 64,
    std::size_t xi_points = 128, double tol = kDefaultTolerance,
    const ParallelFor& parallel = serial_executor());

} // namespace kgcert
