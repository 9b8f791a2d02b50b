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
#ifndef NCORE_HARNESS_BENCHMARK_H_
#define NCORE_HARNESS_BENCHMARK_H_

#include <array>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "ncore/harness/config.h"
#include "ncore/harness/dataset_io.h"
#include "ncore/harness/hpo.h"
#include "ncore/harness/split.h"

namespace ncore::harness {

// Records which fold each phase of a run read, in order. Entries look like
// "hpo/ncore:train" or "test/ncore:test".
class AccessLog {
 public:
  void record(const std::string& phase, const std::string& fold);
  std::vector<std::string> entries() const;

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> entries_;
};

struct MethodResult {
  Method method = Method::kNCoRE;
  RunRecord best;
  std::vector<RunRecord> runs;
  evalstats::MetricReport test;
};

struct BenchmarkResult {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::size_t units = 0;
  int k = 0;
  std::array<std::size_t, 3> fold_sizes{};
  std::vector<MethodResult> methods;
};

// Simulates or loads the configured dataset; the oracle is rebuilt from the
// sidecar provenance for loaded data.
struct PreparedData {
  LoadedDataset data;
  simcore::OutcomeOracle oracle;
};
PreparedData prepare_data(const DatasetSpec& spec);

// Split, search per method, then score the selected model on the test fold.
BenchmarkResult run_benchmark(const ExperimentConfig& config, AccessLog* log = nullptr);
BenchmarkResult run_benchmark(const ExperimentConfig& config, const PreparedData& data,
                              AccessLog* log = nullptr);

std::string summary_json(const BenchmarkResult& result, const ExperimentConfig& config);
std::string results_csv(const BenchmarkResult& result);
// Writes summary.json and results.csv into `directory`.
void write_benchmark(const BenchmarkResult& result, const ExperimentConfig& config,
                     const std::filesystem::path& directory);

// Writes `contents` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_BENCHMARK_H_
