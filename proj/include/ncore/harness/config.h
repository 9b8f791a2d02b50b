/*
 * Copyright 2026 The NCoRE Authors.
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
#ifndef NCORE_HARNESS_CONFIG_H_
#define NCORE_HARNESS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ncore/simcore/simulator.h"

namespace ncore::harness {

enum class Method { kNCoRE, kNCoREBalanced, kRidge, kRidgeHamming, kKnn };

std::string_view method_name(Method method);
// Accepts the names printed by method_name. Throws ConfigError.
Method parse_method(std::string_view name);
const std::vector<Method>& all_methods();
bool is_neural(Method method);

struct SplitRatios {
  double train = 0.6;
  double validation = 0.2;
  double test = 0.2;

  // Throws ConfigError unless all ratios are positive and sum to 1 +- 1e-9.
  void validate() const;
};

struct DatasetSpec {
  // Simulate from `simulation`, or load `path` (CSV with schema sidecar).
  bool simulate = true;
  simcore::SimulationConfig simulation;
  std::filesystem::path path;
};

// Everything a benchmark or sweep run needs. Serialized as YAML; see
// docs/config.md for the schema.
struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<Method> methods = all_methods();
  int hpo_budget = 30;
  SplitRatios ratios;
  // Replicate seeds for sweeps. A replicate seed drives the simulated data,
  // the split, the search and the bootstrap.
  std::vector<std::uint64_t> seeds = {0};
  // Master seed for a single benchmark run (split, search, bootstrap).
  std::uint64_t seed = 0;
  int epochs = 300;
  int patience = 30;
  int balancing_dim = 8;
  int knn_neighbors = 5;
  std::size_t bootstrap_resamples = 100;
  int workers = 1;
  // Include wall-clock timings in benchmark output. Off by default so that
  // output files are byte-identical across runs.
  bool record_timing = false;
  std::filesystem::path output;

  // Sweep settings; empty axis means no sweep configured.
  std::string sweep_axis;
  std::vector<double> sweep_values;

  void validate() const;
};

ExperimentConfig parse_experiment_config(std::string_view yaml,
                                         const std::string& source = "<config>");
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string to_yaml(const ExperimentConfig& config);
// Stable 16-hex-digit FNV-1a digest of to_yaml(config).
std::string config_hash(const ExperimentConfig& config);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_CONFIG_H_
