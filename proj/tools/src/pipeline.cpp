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

#include "pipeline.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "kgcert/certify.hpp"
#include "kgcert/export.hpp"
#include "kgcert/highfreq.hpp"
#include "kgcert/lambert_w.hpp"
#include "kgcert/monodromy.hpp"
#include "kgcert/parallel.hpp"
#include "kgcert/perturbation.hpp"

#ifndef KGCERT_VERSION
#define KGCERT_VERSION "0.0.0"
#endif

namespace kgcert::cli {

using nlohmann::ordered_json;

namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const char* error_type(const std::exception& e) {
  if (dynamic_cast<const ModelAssumptionError*>(&e)) return "ModelAssumptionError";
  if (dynamic_cast<const InvalidCoefficientError*>(&e)) return "InvalidCoefficientError";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const NoCertificateError*>(&e)) return "NoCertificateError";
  if (dynamic_cast<const ThresholdSearchError*>(&e)) return "ThresholdSearchError";
  if (dynamic_cast<const IntegrationError*>(&e)) return "IntegrationError";
  if (dynamic_cast<const FrameError*>(&e)) return "FrameError";
  if (dynamic_cast<const FitError*>(&e)) return "FitError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  return "Error";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

template <class Writer>
void write_csv(const std::filesystem::path& path, Writer&& writer) {
  std::ostringstream buf;
  writer(buf);
  write_text(path, buf.str());
}

ordered_json model_json(const RunConfig& cfg, const ModelSpec& spec) {
  ordered_json m;
  m["period"] = spec.period();
  m["dissipation"] = cfg.dissipation_decl;
  m["mass"] = cfg.mass_decl;
  if (!cfg.perturbation_decl.empty()) m["mass_perturbation"] = cfg.perturbation_decl;
  m["beta"] = spec.beta();
  m["m0"] = spec.m0();
  m["epsilon"] = spec.epsilon();
  m["dissipation_min"] = spec.dissipation_min();
  m["dissipation_strictly_positive"] = spec.dissipation_strictly_positive();
  return m;
}

ordered_json self_checks(const ModelSpec& spec, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const double T = spec.period();
  const double target = std::exp(-2.0 * spec.beta() * T);
  ordered_json samples = ordered_json::array();
  double worst_det = 0.0;
  for (std::size_t i = 0; i < cfg.grids.self_check_samples; ++i) {
    const double t = T * unit(rng);
    const double xi = 20.0 * unit(rng);
    const auto sample = monodromy_at(spec, t, xi, cfg.tolerances.propagate);
    const double err = std::abs(sample.matrix.det() - target) / target;
    worst_det = std::max(worst_det, err);
    samples.push_back({{"t", t}, {"xi", xi}, {"det_relative_error", err}});
  }
  double worst_w = 0.0;
  for (std::size_t i = 0; i < cfg.grids.self_check_samples; ++i) {
    const double x = std::pow(10.0, -6.0 + 12.0 * unit(rng));
    const double w = lambert_w0(x);
    worst_w = std::max(worst_w, std::abs(w * std::exp(w) - x) / std::max(1.0, x));
  }
  ordered_json out;
  out["seed"] = cfg.seed;
  out["liouville_max_relative_error"] = worst_det;
  out["liouville_pass"] = worst_det <= 1e-8;
  out["lambert_w_max_residual"] = worst_w;
  out["lambert_w_pass"] = worst_w <= 1e-14;
  out["liouville_samples"] = std::move(samples);
  return out;
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array()) {
    if (!j.empty() && j.front().is_string()) {
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << prefix << '[' << i << "] = " << j[i].get<std::string>() << '\n';
      }
    }
  } else if (j.is_string()) {
    out << prefix << " = " << j.get<std::string>() << '\n';
  } else {
    out << prefix << " = " << j.dump() << '\n';
  }
}

} // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  if (dynamic_cast<const ModelAssumptionError*>(&e) ||
      dynamic_cast<const InvalidCoefficientError*>(&e) ||
      dynamic_cast<const PreconditionError*>(&e)) {
    return kExitModel;
  }
  if (dynamic_cast<const NoCertificateError*>(&e) ||
      dynamic_cast<const ThresholdSearchError*>(&e)) {
    return kExitCertificate;
  }
  return kExitNumerical;
}

std::string render_summary(const ordered_json& certificate) {
  std::ostringstream out;
  out << "kgcert summary (values mirror certificate.json)\n";
  flatten(certificate, "", out);
  return out.str();
}

RunOutcome run_pipeline(RunConfig cfg, const RunOverrides& overrides, std::ostream& log) {
  if (overrides.output_dir) cfg.output_dir = *overrides.output_dir;
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (!overrides.stages.empty()) {
    cfg.stages.clear();
    for (const auto& s : overrides.stages) {
      if (s == "all") {
        cfg.stages = {Stage::Threshold, Stage::Contraction, Stage::Epsilon, Stage::Decay};
      } else {
        cfg.stages.insert(parse_stage(s));
      }
    }
  }
  check_stage_dependencies(cfg.stages);
  if (!cfg.model) throw ConfigError("no model declared");
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.output_dir.string());

  const ModelSpec& spec = *cfg.model;
  const ParallelFor parallel = thread_executor(overrides.workers);
  const double tol = cfg.tolerances.propagate;

  RunOutcome outcome;
  ordered_json& cert_json = outcome.certificate;
  cert_json["schema_version"] = 1;
  cert_json["tool"] = {{"name", "kgcert"}, {"version", KGCERT_VERSION}};
  cert_json["model"] = model_json(cfg, spec);
  ordered_json stages = ordered_json::array();
  for (Stage s : cfg.stages) stages.push_back(std::string(to_string(s)));
  cert_json["stages"] = stages;
  cert_json["unchecked_assumptions"] = ordered_json::array(
      {"b' is bounded (b' in L-infinity); not verified numerically",
       "grid scans certify the sampled (t, xi) points only"});

  bool failed = false;
  std::optional<ThresholdResult> threshold;
  std::optional<ContractionCertificate> certificate;
  std::string stage_name = "self_checks";
  try {
    cert_json["self_checks"] = self_checks(spec, cfg);

    if (cfg.stages.count(Stage::Threshold)) {
      stage_name = "threshold";
      log << "threshold: searching frequency threshold N\n";
      ThresholdOptions opts;
      opts.window = cfg.grids.threshold_window;
      opts.xi_points = cfg.grids.threshold_xi_points;
      opts.t_points = cfg.grids.threshold_t_points;
      opts.resolution = cfg.tolerances.threshold_resolution;
      opts.parallel = parallel;
      threshold = find_threshold_N(spec, opts);
      const auto check = check_large_frequency_contraction(
          spec, threshold->N, opts.window, opts.t_points, opts.xi_points, tol, parallel);
      const bool pass = check.max_norm <= check.bound + 1e-6;
      failed = failed || !pass;
      write_csv(cfg.output_dir / "threshold_trace.csv",
                [&](std::ostream& o) { write_threshold_trace_csv(o, threshold->trace); });
      cert_json["threshold"] = {
          {"N", threshold->N},
          {"sup_value", threshold->sup_value},
          {"actual_mass_sup", threshold->actual_mass_sup},
          {"target", threshold->target},
          {"window", threshold->window},
          {"xi_max_checked", threshold->xi_max_checked},
          {"xi_points", threshold->xi_points},
          {"t_points", threshold->t_points},
          {"candidates_tried", threshold->trace.size()},
          {"large_frequency_check",
           {{"max_norm", check.max_norm},
            {"bound", check.bound},
            {"worst_t", check.worst_t},
            {"worst_xi", check.worst_xi},
            {"verdict", pass ? "Pass" : "Fail"}}}};
    }

    if (cfg.stages.count(Stage::Contraction)) {
      stage_name = "contraction";
      log << "contraction: searching contraction power k\n";
      const ModelSpec reference = spec.constant_mass_reference();
      ContractionOptions opts;
      opts.t_points = cfg.grids.t_points;
      opts.xi_points = cfg.grids.xi_points;
      opts.margin = cfg.tolerances.margin;
      opts.tol = tol;
      opts.parallel = parallel;
      const auto result = find_contraction_k(reference, threshold->N, cfg.grids.k_max, opts);
      certificate = assemble_certificate(reference, result, opts);
      refine_certificate(reference, *certificate, parallel);
      const bool stable = certificate->grid_change() < 1e-3;
      failed = failed || !stable;
      write_csv(cfg.output_dir / "monodromy_scan.csv",
                [&](std::ostream& o) { write_monodromy_scan_csv(o, result.scan.samples); });
      double max_rho = 0.0;
      for (double r : result.scan.rho) max_rho = std::max(max_rho, r);
      const auto& c = *certificate;
      cert_json["contraction"] = {
          {"N", c.N},
          {"k", c.k},
          {"c1", c.c1},
          {"c1_refined", c.c1_refined},
          {"grid_change", c.grid_change()},
          {"delta0", c.delta0},
          {"delta1", c.delta1},
          {"C", c.C},
          {"worst_t", result.worst_t},
          {"worst_xi", result.worst_xi},
          {"max_spectral_radius", max_rho},
          {"t_points", c.t_points},
          {"xi_points", c.xi_points},
          {"refined_t_points", c.refined_t_points},
          {"refined_xi_points", c.refined_xi_points},
          {"margin", c.margin},
          {"tolerance", c.tol},
          {"verdict", stable ? "Pass" : "Fail"}};
    }

    if (cfg.stages.count(Stage::Epsilon)) {
      stage_name = "epsilon";
      log << "epsilon: evaluating admissible mass perturbation\n";
      const auto bound = epsilon_bound(*certificate, spec.m0());
      ordered_json e = {{"epsilon_max", bound.epsilon_max},
                        {"w_argument", bound.w_argument},
                        {"vacuous", bound.vacuous},
                        {"audit_log_margin_xi_zero", bound.audit_log_margin_zero},
                        {"audit_log_margin_xi_N", bound.audit_log_margin_N},
                        {"audit_pass", bound.audit_pass}};
      bool pass = bound.audit_pass;
      if (!spec.has_constant_mass()) {
        const bool within = spec.epsilon() <= bound.epsilon_max;
        const auto check = verify_perturbed_contraction(spec, *certificate, tol, parallel);
        e["model_epsilon"] = spec.epsilon();
        e["model_epsilon_within_bound"] = within;
        e["perturbed_contraction"] = {{"worst_norm", check.worst},
                                      {"worst_t", check.worst_t},
                                      {"worst_xi", check.worst_xi},
                                      {"ok", check.ok}};
        pass = pass && within && check.ok;
      }
      e["verdict"] = pass ? "Pass" : "Fail";
      failed = failed || !pass;
      cert_json["epsilon"] = std::move(e);
    }

    if (cfg.stages.count(Stage::Decay)) {
      stage_name = "decay";
      log << "decay: sweeping sup-norm curve\n";
      const auto& c = *certificate;
      const double t_end =
          std::max(cfg.grids.decay_periods * spec.period(), 10.0 * c.k * spec.period());
      DecayOptions opts;
      opts.tol = tol;
      opts.parallel = parallel;
      auto report = sup_norm_curve(spec, c, t_end, opts);
      fit_report(report);
      write_csv(cfg.output_dir / "decay.csv", [&](std::ostream& o) { write_decay_csv(o, report); });
      const DecayStatement which = spec.has_constant_mass() ? DecayStatement::ConstantMass
                                                            : DecayStatement::PerturbedMass;
      const auto tc = decay_constants(report, c, which);
      ordered_json d = {{"t_end", t_end},
                        {"time_points", report.time_grid.size()},
                        {"xi_points", report.xi_grid.size()},
                        {"certified_rate", report.certified_rate},
                        {"certified_prefactor", report.certified_prefactor},
                        {"worst_ratio", report.worst_ratio},
                        {"fitted_rate", report.fitted_rate},
                        {"fit_residual", report.fit_residual},
                        {"burn_in", report.burn_in},
                        {"failed_frequencies", report.failed_xi.size()},
                        {"verdict", std::string(to_string(report.verdict))}};
      if (spec.dissipation_strictly_positive()) {
        d["gamma_at_T"] = gamma_of(spec, spec.period());
        d["gamma_at_t_end"] = gamma_of(spec, t_end);
      }
      cert_json["decay"] = std::move(d);
      cert_json["decay_constants"] = {
          {"statement", which == DecayStatement::ConstantMass ? "constant_mass" : "perturbed_mass"},
          {"rate_symbol", tc.rate_symbol},
          {"rate", tc.rate},
          {"C", tc.C},
          {"delta0", tc.delta0},
          {"delta1", tc.delta1},
          {"rate_proof_implied", tc.rate_proof_implied},
          {"inequalities", tc.inequalities}};
      if (report.verdict == Verdict::Inconclusive) {
        outcome.exit_code = kExitNumerical;
      } else if (report.verdict == Verdict::Fail) {
        failed = true;
      }
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    outcome.exit_code = exit_code_for(e);
    ordered_json err = {{"stage", stage_name}, {"type", error_type(e)}, {"message", e.what()}};
    if (const auto* nc = dynamic_cast<const NoCertificateError*>(&e)) {
      err["worst_t"] = nc->worst_t;
      err["worst_xi"] = nc->worst_xi;
      err["worst_norm"] = nc->worst_norm;
    }
    if (const auto* ie = dynamic_cast<const IntegrationError*>(&e)) {
      err["failure_time"] = ie->failure_time();
    }
    cert_json["error"] = std::move(err);
    log << "error in stage " << stage_name << ": " << e.what() << '\n';
  }
  if (outcome.exit_code == kExitOk && failed) outcome.exit_code = kExitCertificate;
  cert_json["exit_code"] = outcome.exit_code;

  write_text(cfg.output_dir / "certificate.json", cert_json.dump(2) + "\n");
  outcome.summary = render_summary(cert_json);
  write_text(cfg.output_dir / "summary.txt", outcome.summary);
  return outcome;
}

} // namespace kgcert::cli
