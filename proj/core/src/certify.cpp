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

#include "kgcert/certify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "kgcert/errors.hpp"
#include "kgcert/quadrature.hpp"

namespace kgcert {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::vector<double> decay_frequency_grid(double N, const DecayOptions& opts) {
  auto grid = uniform_grid(0.0, N, opts.small_xi_points);
  if (opts.large_xi_points > 1) {
    const auto upper = uniform_grid(N, opts.large_factor * N, opts.large_xi_points);
    grid.insert(grid.end(), upper.begin() + 1, upper.end());
  }
  return grid;
}

DecayReport sup_norm_curve(const ModelSpec& spec, const ContractionCertificate& cert,
                           double t_end, const DecayOptions& opts) {
  const double T = spec.period();
  const double kT = cert.k * T;
  if (!(t_end >= 10.0 * kT * (1.0 - 1e-12))) {
    throw PreconditionError("sup_norm_curve requires t_end >= 10 kT");
  }
  DecayReport report;
  report.kT = kT;
  report.certified_rate = std::min(cert.delta0, cert.delta1);
  report.certified_prefactor =
      std::max(std::exp(cert.delta0 * T), std::exp(cert.delta1 * kT));
  report.xi_grid = decay_frequency_grid(cert.N, opts);

  const double quarter = 0.25 * T;
  const auto steps = static_cast<std::size_t>(std::floor(t_end / quarter + 1e-9));
  report.time_grid.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) report.time_grid[i] = static_cast<double>(i) * quarter;

  const std::size_t nxi = report.xi_grid.size();
  const std::size_t nt = report.time_grid.size();
  std::vector<double> norms(nxi * nt, 0.0);
  std::vector<char> failed(nxi, 0);
  const std::array<double, 4> offsets{quarter, 2.0 * quarter, 3.0 * quarter, T};

  opts.parallel(nxi, [&](std::size_t r) {
    const double xi = report.xi_grid[r];
    std::vector<Mat2C> fundamentals;
    try {
      fundamentals = propagate_to(spec, 0.0, offsets, xi, opts.tol);
    } catch (const IntegrationError&) {
      failed[r] = 1;
      return;
    }
    const Mat2C base = fundamentals[3];
    std::array<Mat2C, 4> E{Mat2C::identity(), fundamentals[0], fundamentals[1], fundamentals[2]};
    std::array<Mat2C, 4> M;
    std::array<Mat2C, 4> P;
    for (std::size_t j = 0; j < 4; ++j) {
      M[j] = j == 0 ? base : E[j] * base * E[j].inverse();
      P[j] = Mat2C::identity();
    }
    double* row = &norms[r * nt];
    for (std::size_t i = 0; i < nt; ++i) {
      const std::size_t j = i % 4;
      if (i >= 4) P[j] = M[j] * P[j];
      row[i] = spectral_norm_2x2(P[j] * E[j]);
    }
  });

  report.sup_norm_curve.assign(nt, 0.0);
  report.bound_curve.resize(nt);
  for (std::size_t r = 0; r < nxi; ++r) {
    if (failed[r]) {
      report.failed_xi.push_back(report.xi_grid[r]);
      continue;
    }
    for (std::size_t i = 0; i < nt; ++i) {
      report.sup_norm_curve[i] = std::max(report.sup_norm_curve[i], norms[r * nt + i]);
    }
  }
  bool dominated = true;
  for (std::size_t i = 0; i < nt; ++i) {
    const double t = report.time_grid[i];
    report.bound_curve[i] =
        report.certified_prefactor * std::exp(-report.certified_rate * (t - kT));
    const double ratio = report.sup_norm_curve[i] / report.bound_curve[i];
    report.worst_ratio = std::max(report.worst_ratio, ratio);
    if (!(ratio <= 1.0 + 1e-3)) dominated = false;
  }
  if (!report.failed_xi.empty()) {
    report.verdict = Verdict::Inconclusive;
  } else {
    report.verdict = dominated ? Verdict::Pass : Verdict::Fail;
  }
  return report;
}

RateFit fit_rate(std::span<const double> times, std::span<const double> values, double burn_in) {
  if (times.size() != values.size()) throw FitError("fit_rate: size mismatch");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < burn_in) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw FitError("fit_rate: values must be positive and finite");
    }
    xs.push_back(times[i]);
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 8) throw FitError("fit_rate: fewer than 8 points after burn-in");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw FitError("fit_rate: degenerate time grid");
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    ss += e * e;
  }
  return {-slope, std::sqrt(ss / n), xs.size()};
}

void fit_report(DecayReport& report, std::optional<double> burn_in) {
  report.burn_in = burn_in.value_or(2.0 * report.kT);
  const auto fit = fit_rate(report.time_grid, report.sup_norm_curve, report.burn_in);
  report.fitted_rate = fit.rate;
  report.fit_residual = fit.residual;
}

namespace {

double mass_over_dissipation_integral(const ModelSpec& spec, double a, double b) {
  static const GaussLegendreRule rule = gauss_legendre(16);
  const auto& diss = spec.dissipation();
  const auto& breaks = spec.breakpoints();
  const double T = spec.period();
  // Breakpoints split every piece, so each panel sees one smooth branch.
  return integrate_piecewise(
      [&](double t) { return spec.mass_squared(t) / diss(t); }, a, b, breaks, T, T / 64.0, rule);
}

void require_positive(const ModelSpec& spec) {
  if (!spec.dissipation_strictly_positive()) {
    throw DomainError("gamma requires a strictly positive dissipation");
  }
}

} // namespace

double gamma_of(const ModelSpec& spec, double t) {
  require_positive(spec);
  if (!(t >= 0.0)) throw PreconditionError("gamma_of requires t >= 0");
  const double T = spec.period();
  const double cycles = std::floor(t / T);
  const double rest = t - cycles * T;
  double integral = mass_over_dissipation_integral(spec, 0.0, rest);
  if (cycles > 0.0) integral += cycles * mass_over_dissipation_integral(spec, 0.0, T);
  return std::exp(-integral);
}

std::vector<double> gamma_curve(const ModelSpec& spec, std::span<const double> times) {
  require_positive(spec);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(gamma_of(spec, t));
  return out;
}

DecayConstants decay_constants(const DecayReport& report, const ContractionCertificate& cert,
                             DecayStatement which) {
  DecayConstants tc;
  tc.which = which;
  tc.delta0 = cert.delta0;
  tc.delta1 = cert.delta1;
  tc.rate = std::min(cert.delta0, cert.delta1);
  tc.C = std::max(std::exp(cert.delta0 * cert.period), std::exp(cert.delta1 * cert.k * cert.period));
  if (report.certified_prefactor > 0.0) tc.C = std::max(tc.C, report.certified_prefactor);
  tc.rate_symbol = which == DecayStatement::ConstantMass ? "delta" : "sigma";
  tc.rate_proof_implied = which == DecayStatement::PerturbedMass;
  char buf[160];
  const char* sym = tc.rate_symbol.c_str();
  const char* lhs[] = {"||u(t)||_{L2}", "||grad u(t)||_{L2}", "||u_t(t)||_{L2}"};
  const char* rhs[] = {"||u0||_{L2} + ||u1||_{H^-1}", "||u0||_{H1} + ||u1||_{L2}",
                       "||u0||_{H1} + ||u1||_{L2}"};
  for (int i = 0; i < 3; ++i) {
    std::snprintf(buf, sizeof buf, "%s <= %.17g exp(-%s t) (%s), %s = %.17g", lhs[i], tc.C, sym,
                  rhs[i], sym, tc.rate);
    tc.inequalities.emplace_back(buf);
  }
  return tc;
}

} // namespace kgcert
