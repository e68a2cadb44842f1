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

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "kgcert/mat2.hpp"
#include "kgcert/model.hpp"
#include "kgcert/parallel.hpp"
#include "kgcert/propagator.hpp"

namespace kgcert {

enum class SpectrumClass { ComplexConjugatePair, RealPair };

std::string_view to_string(SpectrumClass c);

/// Discriminants with |tr^2 - 4 det| below this are treated as a double
/// (real) root.
inline constexpr double kDegenerateDiscriminant = 1e-10;

/// Spectral data of one monodromy matrix M(t, xi) = E(t + T, t, xi).
struct MonodromySample {
  double t = 0.0;
  double xi = 0.0;
  Mat2C matrix;
  std::array<cplx, 2> eigenvalues{};
  double spectral_radius = 0.0;
  double norm = 0.0;
  SpectrumClass cls = SpectrumClass::RealPair;
};

MonodromySample classify_monodromy(double t, double xi, const Mat2C& m);

/// M(t, xi) by direct propagation over [t, t + T].
MonodromySample monodromy_at(const ModelSpec& spec, double t, double xi,
                             double tol = kDefaultTolerance);

/// j*T/n for j = 0..n-1.
std::vector<double> periodic_grid(double period, std::size_t n);
/// n points from 0 to upper inclusive (n = 1 gives {0}).
std::vector<double> uniform_grid(double lower, double upper, std::size_t n);

/// Monodromy family at one frequency on a time grid inside [0, T].
///
/// One sweep over [0, T] yields E(t_j, 0, xi) and M(0, xi) = E(T, 0, xi);
/// every other member follows from the similarity
///   M(t_j, xi) = E(t_j, 0, xi) M(0, xi) E(t_j, 0, xi)^{-1}.
class MonodromyFamily {
public:
  MonodromyFamily(const ModelSpec& spec, double xi, std::vector<double> t_grid,
                  double tol = kDefaultTolerance);

  double xi() const noexcept { return xi_; }
  std::size_t size() const noexcept { return t_grid_.size(); }
  double t(std::size_t j) const { return t_grid_[j]; }
  const Mat2C& base() const noexcept { return base_; }
  const Mat2C& fundamental(std::size_t j) const { return fundamental_[j]; }
  Mat2C at(std::size_t j) const { return members_[j]; }

private:
  double xi_;
  std::vector<double> t_grid_;
  Mat2C base_;
  std::vector<Mat2C> fundamental_;
  std::vector<Mat2C> members_;
};

/// Monodromy matrices on a (t, xi) product grid, row = xi index.
struct MonodromyGrid {
  std::vector<double> t_grid;
  std::vector<double> xi_grid;
  std::vector<Mat2C> matrices; // matrices[i * t_grid.size() + j]

  const Mat2C& at(std::size_t xi_index, std::size_t t_index) const {
    return matrices[xi_index * t_grid.size() + t_index];
  }
};

MonodromyGrid build_monodromy_grid(const ModelSpec& spec, std::vector<double> t_grid,
                                   std::vector<double> xi_grid,
                                   double tol = kDefaultTolerance,
                                   const ParallelFor& parallel = serial_executor());

struct SpectralScan {
  std::vector<double> xi;
  std::vector<double> rho;
  std::vector<MonodromySample> samples; // M(0, xi) per grid point
  std::vector<std::size_t> blockers;    // indices with rho >= 1 - 1e-9
};

/// rho(M0(0, xi)) on xi_grid. Constant mass with m0 > 0 only
/// (PreconditionError otherwise).
SpectralScan spectral_radius_scan(const ModelSpec& spec, std::span<const double> xi_grid,
                                  double tol = kDefaultTolerance,
                                  const ParallelFor& parallel = serial_executor());

struct ContractionOptions {
  std::size_t t_points = 64;
  std::size_t xi_points = 256;
  double margin = 1e-3;
  double tol = kDefaultTolerance;
  ParallelFor parallel = serial_executor();
};

struct PowerNormMax {
  double value = 0.0;
  double t = 0.0;
  double xi = 0.0;
};

/// max over the grid of ||M^k||.
PowerNormMax max_power_norm(const MonodromyGrid& grid, unsigned k);

struct ContractionResult {
  int k = 0;
  double c1 = 0.0;
  double worst_t = 0.0;
  double worst_xi = 0.0;
  double N = 0.0;
  std::size_t t_points = 0;
  std::size_t xi_points = 0;
  SpectralScan scan;
  MonodromyGrid grid;
};

/// Smallest k <= k_max with max_{t, |xi| <= N} ||M0(t, xi)^k|| <= 1 - margin
/// on a t_points x xi_points grid; c1 is that maximum. Throws
/// NoCertificateError (worst point attached) when k_max is exhausted or the
/// spectral scan finds rho >= 1.
ContractionResult find_contraction_k(const ModelSpec& spec, double N, int k_max,
                                     const ContractionOptions& opts = {});

/// The certified decay constants.
struct ContractionCertificate {
  double N = 0.0;
  int k = 0;
  double c1 = 0.0;
  double c1_refined = 0.0; ///< same k on the doubled grid
  double delta0 = 0.0;
  double delta1 = 0.0;
  double C = 0.0;
  double beta = 0.0;
  double period = 0.0;
  double m0 = 0.0;
  // grids and tolerances used
  std::size_t t_points = 0;
  std::size_t xi_points = 0;
  std::size_t refined_t_points = 0;
  std::size_t refined_xi_points = 0;
  double margin = 0.0;
  double tol = 0.0;

  double grid_change() const { return std::abs(c1_refined - c1); }
};

/// delta0 = beta/2, delta1 = ln(1/c1)/(kT), C = exp(delta1 k T).
/// Throws PreconditionError unless 0 < c1 < 1, k >= 1, N > 0.
ContractionCertificate assemble_certificate(const ModelSpec& spec, double N, int k,
                                            double c1);
/// Same, recording the grids and tolerances of a finished k search.
ContractionCertificate assemble_certificate(const ModelSpec& spec,
                                            const ContractionResult& found,
                                            const ContractionOptions& opts);

/// Recomputes max ||M^k|| for the certificate's k on the doubled grid and
/// stores it in c1_refined.
void refine_certificate(const ModelSpec& spec, ContractionCertificate& cert,
                        const ParallelFor& parallel = serial_executor());

} // namespace kgcert
