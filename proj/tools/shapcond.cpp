/*
 * Copyright 2026 The shapcond Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "shapcond/error.hpp"
#include "shapcond/experiment.hpp"
#include "shapcond/parallel.hpp"

namespace {

int run(const std::string& config_path, std::optional<int> threads, std::optional<std::string> output,
        std::optional<std::uint64_t> seed_override) {
  shapcond::ExperimentConfig config = shapcond::load_config(config_path);
  if (seed_override) {
    config.seed = *seed_override;
    config.data.seed = *seed_override;
  }
  if (output) config.output_dir = *output;
  const int n_threads = threads ? *threads : shapcond::default_thread_count();
  if (n_threads < 1) throw shapcond::ConfigError("--threads must be positive");
  shapcond::ExperimentResult result;
  try {
    result = shapcond::run_experiment(config, n_threads);
  } catch (const std::exception& e) {
    std::filesystem::create_directories(config.output_dir);
    std::ofstream manifest(std::filesystem::path(config.output_dir) / "manifest.json", std::ios::binary);
    const nlohmann::json j = {
        {"config", shapcond::config_to_json(config)}, {"complete", false}, {"error", e.what()}};
    manifest << j.dump(2) << "\n";
    throw;
  }
  shapcond::write_artifacts(result, config.output_dir);
  std::printf("%-24s %12s %12s %10s %10s %10s\n", "method", "MAE", "MSE_v", "train", "generate", "predict");
  for (const auto& m : result.methods) {
    if (m.ok) {
      std::printf("%-24s %12.6f %12.6f %10.3f %10.3f %10.3f\n", m.name.c_str(), m.mae, m.mse_v, m.t_train,
                  m.t_generate, m.t_predict);
    } else {
      std::printf("%-24s FAILED: %s\n", m.name.c_str(), m.error.c_str());
    }
  }
  std::printf("results written to %s\n", config.output_dir.c_str());
  return result.all_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional Shapley value experiments"};
  app.require_subcommand(1);

  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment described by a JSON config");
  std::string config_path;
  std::optional<int> threads;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed_override;
  run_cmd->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--threads", threads, "Worker threads (default: SHAPCOND_THREADS or 1)");
  run_cmd->add_option("--output", output, "Output directory (overrides output_dir)");
  run_cmd->add_option("--seed-override", seed_override, "Replace the config seed");

  CLI::App* list_cmd = app.add_subcommand("list-methods", "List the available estimators");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(config_path, threads, output, seed_override);
    if (*list_cmd) {
      for (const auto& m : shapcond::method_registry()) {
        std::printf("%-24s %-12s %s\n", m.name.c_str(), shapcond::family_name(m.family).c_str(),
                    m.description.c_str());
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
