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
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace kgcert::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitModel = 3,
  kExitCertificate = 4,
  kExitNumerical = 5,
};

/// Exit status for an exception escaping a stage.
int exit_code_for(const std::exception& e);

struct RunOverrides {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> stages;
  unsigned workers = 1;
};

struct RunOutcome {
  int exit_code = kExitOk;
  nlohmann::ordered_json certificate;
  std::string summary;
};

/// Runs the requested stages in dependency order and writes certificate.json,
/// summary.txt and the CSV files into the output directory. Stage failures
/// are recorded in the certificate before returning; only configuration
/// errors (ConfigError) escape.
RunOutcome run_pipeline(RunConfig cfg, const RunOverrides& overrides, std::ostream& log);

/// One "path = value" line per scalar in the certificate.
std::string render_summary(const nlohmann::ordered_json& certificate);

} // namespace kgcert::cli
