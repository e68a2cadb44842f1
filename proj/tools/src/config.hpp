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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "kgcert/errors.hpp"
#include "kgcert/model.hpp"

namespace kgcert::cli {

/// Malformed configuration, unreadable input or a stage dependency gap.
class ConfigError : public Error {
public:
  using Error::Error;
};

enum class Stage { Threshold, Contraction, Epsilon, Decay };

std::string_view to_string(Stage s);
Stage parse_stage(std::string_view name);

struct GridSettings {
  std::size_t t_points = 64;
  std::size_t xi_points = 256;
  std::size_t threshold_t_points = 64;
  std::size_t threshold_xi_points = 128;
  double threshold_window = 10.0;
  int k_max = 64;
  double decay_periods = 40.0;
  std::size_t self_check_samples = 8;
};

struct ToleranceSettings {
  double propagate = 1e-10;
  double margin = 1e-3;
  double threshold_resolution = 1e-3;
};

struct RunConfig {
  std::filesystem::path source;      ///< config file, empty when built in memory
  std::string dissipation_decl;
  std::string mass_decl;
  std::string perturbation_decl;
  double period = 0.0;
  std::optional<ModelSpec> model;
  std::set<Stage> stages;
  GridSettings grids;
  ToleranceSettings tolerances;
  std::filesystem::path output_dir = "kgcert-out";
  std::uint64_t seed = 12345;
};

/// Parses the sectioned key = value format documented in the README.
/// Relative CSV and output paths resolve against `base_dir`. Throws
/// ConfigError for syntax errors and malformed coefficient files;
/// ModelAssumptionError propagates from model validation.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// "name(a, b, ...)" into a coefficient with the given period.
PeriodicCoefficient parse_coefficient(std::string_view decl, double period,
                                      const std::filesystem::path& base_dir);

/// Throws ConfigError naming the first missing prerequisite.
void check_stage_dependencies(const std::set<Stage>& stages);

} // namespace kgcert::cli
