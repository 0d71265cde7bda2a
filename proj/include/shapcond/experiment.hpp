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

#ifndef SHAPCOND_EXPERIMENT_HPP_
#define SHAPCOND_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapcond/linalg.hpp"
#include "shapcond/simulation.hpp"

namespace shapcond {

enum class MethodFamily { kMonteCarlo, kSeparate, kSurrogate };

struct MethodInfo {
  std::string name;
  MethodFamily family;
  std::string description;
};

// Every estimator the runner knows, in display order.
const std::vector<MethodInfo>& method_registry();
// Throws ConfigError for unknown names.
const MethodInfo& find_method(const std::string& name);
std::string family_name(MethodFamily family);

// A method entry of the config: a bare name or an object {"name": ..., ...}
// whose other keys override the method's defaults.
struct MethodSpec {
  std::string name;
  nlohmann::json options = nlohmann::json::object();
};

// Where the reference Shapley values come from. kOracle runs Monte Carlo
// on the true data law; kAnalyticLinear uses the closed form for an affine f
// on Gaussian data.
enum class TruthKind { kOracle, kAnalyticLinear };

struct ExperimentConfig {
  std::uint64_t seed = 1;
  DataSpec data;
  TrueModelSpec true_model;
  PredictiveKind predictive = PredictiveKind::kLmFormula;
  std::vector<MethodSpec> methods;
  Index k = 250;
  Index oracle_k = 10'000;
  // Seed of the truth oracle; 0 derives it from seed.
  std::uint64_t oracle_seed = 0;
  TruthKind truth = TruthKind::kOracle;
  double large_constant = 1e6;
  Index row_cap = 10'000'000;
  std::string output_dir = "results";
  bool dump_samples = false;

  // Throws ConfigError when the config is unusable.
  void validate() const;
};

// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

struct MethodOutcome {
  std::string name;
  MethodFamily family = MethodFamily::kMonteCarlo;
  bool ok = false;
  std::string error;
  Matrix phi;  // (M + 1) x N_test
  Matrix v;    // 2^M x N_test
  double t_train = 0.0;
  double t_generate = 0.0;
  double t_predict = 0.0;
  double mae = 0.0;
  Vector mae_per_observation;
  double mse_v = 0.0;
  nlohmann::json model = nlohmann::json::object();
};

struct ExperimentResult {
  ExperimentConfig config;
  int threads = 1;
  SimData data;
  double phi0 = 0.0;
  Vector f_test;
  Matrix truth_phi;
  nlohmann::json predictive_model;
  std::vector<MethodOutcome> methods;
  double t_truth = 0.0;
  // Wall time of the loop over methods.
  double method_loop_wall = 0.0;

  const MethodOutcome& method(const std::string& name) const;
  bool all_ok() const;
};

// Generates data, fits f, computes the reference values and runs every
// method. A method that throws is recorded as failed and the loop
// continues; errors before the loop propagate.
ExperimentResult run_experiment(const ExperimentConfig& config, int threads = 1);

// shapley_values.csv, mae.csv, summary.csv, manifest.json and models.json.
// Numbers carry 10 significant digits. Throws IoError with the path on
// failure.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

// printf("%.10g") with "-0" normalized to "0".
std::string format_number(double x);

}  // namespace shapcond

#endif  // SHAPCOND_EXPERIMENT_HPP_
