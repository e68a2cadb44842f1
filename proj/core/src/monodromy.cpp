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

#include "kgcert/monodromy.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kgcert/errors.hpp"

namespace kgcert {

std::string_view to_string(SpectrumClass c) {
  return c == SpectrumClass::ComplexConjugatePair ? "ComplexConjugatePair" : "RealPair";
}

MonodromySample classify_monodromy(double t, double xi, const Mat2C& m) {
  MonodromySample s;
  s.t = t;
  s.xi = xi;
  s.matrix = m;
  s.eigenvalues = eigenvalues_2x2(m);
  s.spectral_radius = std::max(std::abs(s.eigenvalues[0]), std::abs(s.eigenvalues[1]));
  s.norm = spectral_norm_2x2(m);
  // M is similar to a real matrix, so tr and det are real up to rounding.
  const cplx tr = m.trace();
  const cplx disc = tr * tr - 4.0 * m.det();
  s.cls = (std::abs(disc) > kDegenerateDiscriminant && disc.real() < 0.0)
              ? SpectrumClass::ComplexConjugatePair
              : SpectrumClass::RealPair;
  if (s.cls == SpectrumClass::ComplexConjugatePair &&
      s.eigenvalues[0].imag() < s.eigenvalues[1].imag()) {
    std::swap(s.eigenvalues[0], s.eigenvalues[1]);
  }
  return s;
}

MonodromySample monodromy_at(const ModelSpec& spec, double t, double xi, double tol) {
  if (!(t >= 0.0 && t <= spec.period())) {
    throw PreconditionError("monodromy_at: t must lie in [0, T]");
  }
  const auto m = propagate(spec, t, t + spec.period(), xi, tol).matrix;
  return classify_monodromy(t, xi, m);
}

std::vector<double> periodic_grid(double period, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = period * static_cast<double>(j) / static_cast<double>(n);
  }
  return g;
}

std::vector<double> uniform_grid(double lower, double upper, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lower};
  std::vector<double> g(n);
  for (std::size_t j = 0; j < n; ++j) {
    g[j] = lower + (upper - lower) * static_cast<double>(j) / static_cast<double>(n - 1);
  }
  g.back() = upper;
  return g;
}

MonodromyFamily::MonodromyFamily(const ModelSpec& spec, double xi,
                                 std::vector<double> t_grid, double tol)
    : xi_(xi), t_grid_(std::move(t_grid)) {
  const double T = spec.period();
  std::vector<double> times = t_grid_;
  for (double t : times) {
    if (!(t >= 0.0 && t <= T)) {
      throw PreconditionError("MonodromyFamily: grid times must lie in [0, T]");
    }
  }
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (times[j] < times[j - 1]) {
      throw PreconditionError("MonodromyFamily: grid times must be sorted");
    }
  }
  times.push_back(T);
  auto sweep = propagate_to(spec, 0.0, times, xi, tol);
  base_ = sweep.back();
  sweep.pop_back();
  fundamental_ = std::move(sweep);
  members_.reserve(fundamental_.size());
  for (const auto& e : fundamental_) {
    members_.push_back(e * base_ * e.inverse());
  }
}

MonodromyGrid build_monodromy_grid(const ModelSpec& spec, std::vector<double> t_grid,
                                   std::vector<double> xi_grid, double tol,
                                   const ParallelFor& parallel) {
  MonodromyGrid grid;
  grid.t_grid = std::move(t_grid);
  grid.xi_grid = std::move(xi_grid);
  const std::size_t nt = grid.t_grid.size();
  grid.matrices.resize(nt * grid.xi_grid.size());
  parallel(grid.xi_grid.size(), [&](std::size_t i) {
    MonodromyFamily family(spec, grid.xi_grid[i], grid.t_grid, tol);
    for (std::size_t j = 0; j < nt; ++j) grid.matrices[i * nt + j] = family.at(j);
  });
  return grid;
}

SpectralScan spectral_radius_scan(const ModelSpec& spec, std::span<const double> xi_grid,
                                  double tol, const ParallelFor& parallel) {
  if (!spec.has_constant_mass() || !(spec.m0() > 0.0)) {
    throw PreconditionError("spectral_radius_scan requires a constant mass m0 > 0");
  }
  SpectralScan scan;
  scan.xi.assign(xi_grid.begin(), xi_grid.end());
  scan.samples.resize(scan.xi.size());
  parallel(scan.xi.size(), [&](std::size_t i) {
    const auto m = propagate(spec, 0.0, spec.period(), scan.xi[i], tol).matrix;
    scan.samples[i] = classify_monodromy(0.0, scan.xi[i], m);
  });
  scan.rho.reserve(scan.samples.size());
  for (std::size_t i = 0; i < scan.samples.size(); ++i) {
    scan.rho.push_back(scan.samples[i].spectral_radius);
    if (scan.samples[i].spectral_radius >= 1.0 - 1e-9) scan.blockers.push_back(i);
  }
  return scan;
}

PowerNormMax max_power_norm(const MonodromyGrid& grid, unsigned k) {
  PowerNormMax best;
  best.value = -1.0;
  const std::size_t nt = grid.t_grid.size();
  for (std::size_t i = 0; i < grid.xi_grid.size(); ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      const double v = spectral_norm_2x2(power(grid.at(i, j), k));
      if (v > best.value) best = {v, grid.t_grid[j], grid.xi_grid[i]};
    }
  }
  return best;
}

ContractionResult find_contraction_k(const ModelSpec& spec, double N, int k_max,
                                     const ContractionOptions& opts) {
  if (!spec.has_constant_mass() || !(spec.m0() > 0.0)) {
    throw PreconditionError("find_contraction_k requires a constant mass m0 > 0");
  }
  if (!(N > 0.0) || k_max < 1 || opts.t_points == 0 || opts.xi_points < 2) {
    throw PreconditionError("find_contraction_k: need N > 0, k_max >= 1 and non-empty grids");
  }
  ContractionResult result;
  result.N = N;
  result.t_points = opts.t_points;
  result.xi_points = opts.xi_points;
  result.grid = build_monodromy_grid(spec, periodic_grid(spec.period(), opts.t_points),
                                     uniform_grid(0.0, N, opts.xi_points), opts.tol,
                                     opts.parallel);
  const auto& grid = result.grid;
  const std::size_t nt = grid.t_grid.size();

  // The t = 0 column is M(0, xi); it doubles as the spectral-radius scan.
  result.scan.xi = grid.xi_grid;
  for (std::size_t i = 0; i < grid.xi_grid.size(); ++i) {
    auto s = classify_monodromy(0.0, grid.xi_grid[i], grid.at(i, 0));
    result.scan.rho.push_back(s.spectral_radius);
    if (s.spectral_radius >= 1.0 - 1e-9) result.scan.blockers.push_back(i);
    result.scan.samples.push_back(std::move(s));
  }
  if (!result.scan.blockers.empty()) {
    const auto& bad = result.scan.samples[result.scan.blockers.front()];
    throw NoCertificateError("spectral radius reaches 1 on the scan grid", 0.0, bad.xi,
                             bad.spectral_radius);
  }

  std::vector<Mat2C> powers = grid.matrices;
  PowerNormMax worst;
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) {
      for (std::size_t idx = 0; idx < powers.size(); ++idx) {
        powers[idx] = powers[idx] * grid.matrices[idx];
      }
    }
    worst = {-1.0, 0.0, 0.0};
    for (std::size_t idx = 0; idx < powers.size(); ++idx) {
      const double v = spectral_norm_2x2(powers[idx]);
      if (v > worst.value) worst = {v, grid.t_grid[idx % nt], grid.xi_grid[idx / nt]};
    }
    if (worst.value <= 1.0 - opts.margin) {
      result.k = k;
      result.c1 = worst.value;
      result.worst_t = worst.t;
      result.worst_xi = worst.xi;
      return result;
    }
  }
  std::ostringstream os;
  os << "no contraction power k <= " << k_max << " (worst ||M^k|| = " << worst.value
     << " at t = " << worst.t << ", xi = " << worst.xi << ")";
  throw NoCertificateError(os.str(), worst.t, worst.xi, worst.value);
}

ContractionCertificate assemble_certificate(const ModelSpec& spec, double N, int k,
                                            double c1) {
  if (!(c1 > 0.0 && c1 < 1.0) || k < 1 || !(N > 0.0)) {
    throw PreconditionError("assemble_certificate needs 0 < c1 < 1, k >= 1, N > 0");
  }
  ContractionCertificate cert;
  cert.N = N;
  cert.k = k;
  cert.c1 = c1;
  cert.c1_refined = c1;
  cert.beta = spec.beta();
  cert.period = spec.period();
  cert.m0 = spec.m0();
  const double kT = static_cast<double>(k) * cert.period;
  cert.delta0 = 0.5 * cert.beta;
  cert.delta1 = std::log(1.0 / c1) / kT;
  cert.C = std::exp(cert.delta1 * kT);
  cert.t_points = 64;
  cert.xi_points = 256;
  cert.margin = 1e-3;
  cert.tol = kDefaultTolerance;
  return cert;
}

ContractionCertificate assemble_certificate(const ModelSpec& spec,
                                            const ContractionResult& found,
                                            const ContractionOptions& opts) {
  auto cert = assemble_certificate(spec, found.N, found.k, found.c1);
  cert.t_points = found.t_points;
  cert.xi_points = found.xi_points;
  cert.margin = opts.margin;
  cert.tol = opts.tol;
  return cert;
}

void refine_certificate(const ModelSpec& spec, ContractionCertificate& cert,
                        const ParallelFor& parallel) {
  cert.refined_t_points = 2 * cert.t_points;
  cert.refined_xi_points = 2 * cert.xi_points - 1;
  const auto grid = build_monodromy_grid(
      spec, periodic_grid(spec.period(), cert.refined_t_points),
      uniform_grid(0.0, cert.N, cert.refined_xi_points),
      cert.tol > 0.0 ? cert.tol : kDefaultTolerance, parallel);
  cert.c1_refined = max_power_norm(grid, static_cast<unsigned>(cert.k)).value;
}

} // namespace kgcert
