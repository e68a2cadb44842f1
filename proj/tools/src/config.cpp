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

#include "config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace kgcert::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double parse_number(std::string_view text, std::string_view what) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("expected a number for " + std::string(what) + ", got '" +
                      std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  text = trim(text);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("expected a non-negative integer for " + std::string(what) + ", got '" +
                      std::string(text) + "'");
  }
  return value;
}

struct Call {
  std::string name;
  std::vector<std::string> args;
};

Call parse_call(std::string_view decl) {
  decl = trim(decl);
  const auto open = decl.find('(');
  if (open == std::string_view::npos || decl.back() != ')') {
    throw ConfigError("expected name(args...), got '" + std::string(decl) + "'");
  }
  Call call{lower(trim(decl.substr(0, open))), {}};
  std::string_view inner = decl.substr(open + 1, decl.size() - open - 2);
  if (trim(inner).empty()) return call;
  std::size_t start = 0;
  while (true) {
    const auto comma = inner.find(',', start);
    call.args.emplace_back(trim(inner.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return call;
}

void require_arity(const Call& call, std::size_t lo, std::size_t hi) {
  if (call.args.size() < lo || call.args.size() > hi) {
    throw ConfigError(call.name + " takes " + std::to_string(lo) +
                      (lo == hi ? "" : "-" + std::to_string(hi)) + " arguments, got " +
                      std::to_string(call.args.size()));
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, std::string_view p) {
  std::filesystem::path path{std::string(p)};
  return path.is_absolute() ? path : base / path;
}

using Section = std::map<std::string, std::string>;

} // namespace

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Threshold: return "threshold";
    case Stage::Contraction: return "contraction";
    case Stage::Epsilon: return "epsilon";
    case Stage::Decay: return "decay";
  }
  return "threshold";
}

Stage parse_stage(std::string_view name) {
  const auto n = lower(trim(name));
  if (n == "threshold") return Stage::Threshold;
  if (n == "contraction") return Stage::Contraction;
  if (n == "epsilon") return Stage::Epsilon;
  if (n == "decay") return Stage::Decay;
  throw ConfigError("unknown stage '" + std::string(name) + "'");
}

void check_stage_dependencies(const std::set<Stage>& stages) {
  auto need = [&](Stage s, Stage dep) {
    if (stages.count(s) && !stages.count(dep)) {
      throw ConfigError("stage '" + std::string(to_string(s)) + "' requires stage '" +
                        std::string(to_string(dep)) + "'");
    }
  };
  need(Stage::Contraction, Stage::Threshold);
  need(Stage::Decay, Stage::Contraction);
  need(Stage::Epsilon, Stage::Contraction);
  need(Stage::Epsilon, Stage::Threshold);
}

PeriodicCoefficient parse_coefficient(std::string_view decl, double period,
                                      const std::filesystem::path& base_dir) {
  const Call call = parse_call(decl);
  auto num = [&](std::size_t i) { return parse_number(call.args[i], call.name); };
  try {
    if (call.name == "constant") {
      require_arity(call, 1, 1);
      return PeriodicCoefficient::constant(period, num(0));
    }
    if (call.name == "sin_offset") {
      require_arity(call, 2, 3);
      return PeriodicCoefficient::sin_offset(period, num(0), num(1),
                                             call.args.size() > 2 ? num(2) : 0.0);
    }
    if (call.name == "triangle") {
      require_arity(call, 2, 2);
      return PeriodicCoefficient::triangle(period, num(0), num(1));
    }
    if (call.name == "square") {
      require_arity(call, 2, 3);
      return PeriodicCoefficient::square(period, num(0), num(1),
                                         call.args.size() > 2 ? num(2) : 0.5);
    }
    if (call.name == "custom_csv") {
      require_arity(call, 1, 2);
      Interpolation order = Interpolation::Linear;
      if (call.args.size() > 1) {
        const auto o = lower(call.args[1]);
        if (o == "step") {
          order = Interpolation::Step;
        } else if (o != "linear") {
          throw ConfigError("custom_csv interpolation must be linear or step");
        }
      }
      const auto path = resolve(base_dir, call.args[0]);
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open coefficient file " + path.string());
      return PeriodicCoefficient::from_csv(in, period, order);
    }
  } catch (const InvalidCoefficientError& e) {
    throw ConfigError("invalid coefficient '" + std::string(trim(decl)) + "': " + e.what());
  }
  throw ConfigError("unknown coefficient '" + call.name + "'");
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, Section> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      current = lower(trim(line.substr(1, line.size() - 2)));
      static const std::set<std::string> known{"model", "stages", "grids", "tolerances",
                                               "output", "run"};
      if (!known.count(current)) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + current + "]");
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || current.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value inside a section");
    }
    const auto key = lower(trim(line.substr(0, eq)));
    if (!sections[current].emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  auto take = [&](const std::string& sec, const std::string& key) -> std::optional<std::string> {
    auto s = sections.find(sec);
    if (s == sections.end()) return std::nullopt;
    auto it = s->second.find(key);
    if (it == s->second.end()) return std::nullopt;
    std::string v = it->second;
    s->second.erase(it);
    return v;
  };

  RunConfig cfg;
  const auto period = take("model", "period");
  const auto diss = take("model", "dissipation");
  const auto mass = take("model", "mass");
  const auto pert = take("model", "mass_perturbation");
  if (!period || !diss || !mass) {
    throw ConfigError("[model] needs period, dissipation and mass");
  }
  cfg.period = parse_number(*period, "period");
  if (!(cfg.period > 0.0)) throw ConfigError("period must be positive");
  cfg.dissipation_decl = *diss;
  cfg.mass_decl = *mass;
  auto b = parse_coefficient(*diss, cfg.period, base_dir);
  const Call mass_call = parse_call(*mass);
  if (mass_call.name == "constant") {
    require_arity(mass_call, 1, 1);
    if (pert) throw ConfigError("mass_perturbation given for a constant mass");
    cfg.model.emplace(std::move(b), ConstantMass{parse_number(mass_call.args[0], "mass")});
  } else if (mass_call.name == "perturbed") {
    require_arity(mass_call, 2, 2);
    if (!pert) throw ConfigError("perturbed mass needs [model] mass_perturbation");
    cfg.perturbation_decl = *pert;
    auto m1 = parse_coefficient(*pert, cfg.period, base_dir);
    cfg.model.emplace(std::move(b), PerturbedMass{parse_number(mass_call.args[0], "mass"),
                                                  parse_number(mass_call.args[1], "mass"),
                                                  std::move(m1)});
  } else {
    throw ConfigError("mass must be constant(m0) or perturbed(m0, epsilon)");
  }

  if (const auto run = take("stages", "run")) {
    std::string_view list = *run;
    if (lower(trim(list)) == "all") {
      cfg.stages = {Stage::Threshold, Stage::Contraction, Stage::Epsilon, Stage::Decay};
    } else {
      std::size_t start = 0;
      while (true) {
        const auto comma = list.find(',', start);
        const auto item = trim(list.substr(start, comma - start));
        if (!item.empty()) cfg.stages.insert(parse_stage(item));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
  } else {
    cfg.stages = {Stage::Threshold, Stage::Contraction, Stage::Epsilon, Stage::Decay};
  }

  auto count = [&](const char* key, std::size_t& out) {
    if (const auto v = take("grids", key)) out = parse_count(*v, key);
  };
  count("t_points", cfg.grids.t_points);
  count("xi_points", cfg.grids.xi_points);
  count("threshold_t_points", cfg.grids.threshold_t_points);
  count("threshold_xi_points", cfg.grids.threshold_xi_points);
  count("self_check_samples", cfg.grids.self_check_samples);
  if (const auto v = take("grids", "threshold_window")) {
    cfg.grids.threshold_window = parse_number(*v, "threshold_window");
  }
  if (const auto v = take("grids", "k_max")) {
    cfg.grids.k_max = static_cast<int>(parse_count(*v, "k_max"));
  }
  if (const auto v = take("grids", "decay_periods")) {
    cfg.grids.decay_periods = parse_number(*v, "decay_periods");
  }
  if (const auto v = take("tolerances", "propagate")) {
    cfg.tolerances.propagate = parse_number(*v, "propagate");
  }
  if (const auto v = take("tolerances", "margin")) {
    cfg.tolerances.margin = parse_number(*v, "margin");
  }
  if (const auto v = take("tolerances", "threshold_resolution")) {
    cfg.tolerances.threshold_resolution = parse_number(*v, "threshold_resolution");
  }
  if (const auto v = take("output", "dir")) cfg.output_dir = resolve(base_dir, *v);
  if (const auto v = take("run", "seed")) cfg.seed = parse_count(*v, "seed");

  for (const auto& [name, keys] : sections) {
    if (!keys.empty()) {
      throw ConfigError("unknown key '" + keys.begin()->first + "' in [" + name + "]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  auto cfg = parse_config(buf.str(), base);
  cfg.source = path;
  return cfg;
}

} // namespace kgcert::cli
