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

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "kgcert/errors.hpp"
#include "kgcert/lambert_w.hpp"
#include "pipeline.hpp"

namespace {

using namespace kgcert;

int run_command(const std::string& config_path, const cli::RunOverrides& overrides) {
  try {
    const auto cfg = cli::load_config(config_path);
    const auto outcome = cli::run_pipeline(cfg, overrides, std::cerr);
    std::cout << outcome.summary;
    return outcome.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "kgcert: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}

int w_command(const std::string& arg) {
  double x = 0.0;
  try {
    std::size_t used = 0;
    x = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    std::cerr << "kgcert w: not a number: " << arg << '\n';
    return cli::kExitConfig;
  }
  try {
    std::printf("%.12f\n", lambert_w0(x));
    return cli::kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "kgcert w: " << e.what() << '\n';
    return cli::exit_code_for(e);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgcert: exponential decay certificates for damped Klein-Gordon models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  cli::RunOverrides overrides;
  auto* run = app.add_subcommand("run", "run the certification pipeline");
  run->add_option("--config", config_path, "configuration file")->required();
  auto* out_opt = run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", overrides.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  auto* seed_opt = run->add_option("--seed", seed, "seed for randomized self-checks");
  run->add_option("--stage", overrides.stages,
                  "stage to run (threshold, contraction, epsilon, decay, all); repeatable");

  std::string w_arg;
  auto* w = app.add_subcommand("w", "print the principal Lambert W value");
  w->add_option("x", w_arg, "argument, x >= 0")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  if (*run) {
    if (*out_opt) overrides.output_dir = out_dir;
    if (*seed_opt) overrides.seed = seed;
    return run_command(config_path, overrides);
  }
  return w_command(w_arg);
}
