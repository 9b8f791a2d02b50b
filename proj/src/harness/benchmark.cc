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
#include "ncore/harness/benchmark.h"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"

namespace ncore::harness {
namespace {

std::uint64_t method_key(Method method) { return static_cast<std::uint64_t>(method); }

nlohmann::ordered_json run_json(const RunRecord& run, bool timing) {
  nlohmann::ordered_json j;
  j["run"] = run.run_index;
  nlohmann::ordered_json hp = nlohmann::ordered_json::object();
  for (const auto& [name, value] : run.hyperparameters) hp[name] = value;
  j["hyperparameters"] = hp;
  if (run.diverged) {
    j["validation_rmse"] = nullptr;
    j["failure"] = run.failure;
  } else {
    j["validation_rmse"] = run.validation_rmse;
  }
  j["seed"] = run.seed;
  if (timing) j["wall_seconds"] = run.wall_seconds;
  return j;
}

}  // namespace

void AccessLog::record(const std::string& phase, const std::string& fold) {
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.push_back(phase + ":" + fold);
}

std::vector<std::string> AccessLog::entries() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_;
}

PreparedData prepare_data(const DatasetSpec& spec) {
  if (spec.simulate) {
    simcore::SimulationResult sim = simcore::generate_dataset(spec.simulation);
    LoadedDataset loaded{std::move(sim.dataset), spec.simulation};
    return {std::move(loaded), std::move(sim.oracle)};
  }
  LoadedDataset loaded = load_dataset(spec.path);
  simcore::OutcomeOracle oracle = oracle_for(loaded);
  return {std::move(loaded), std::move(oracle)};
}

BenchmarkResult run_benchmark(const ExperimentConfig& config, AccessLog* log) {
  config.validate();
  const PreparedData data = prepare_data(config.dataset);
  return run_benchmark(config, data, log);
}

BenchmarkResult run_benchmark(const ExperimentConfig& config, const PreparedData& data,
                              AccessLog* log) {
  config.validate();
  const simcore::Dataset& dataset = data.data.dataset;
  Rng split_rng = derive_rng(config.seed, "split");
  const Split split = split_dataset(dataset, config.ratios, split_rng);
  const std::vector<simcore::Unit> train = gather(dataset, split.train);
  const std::vector<simcore::Unit> validation = gather(dataset, split.validation);
  const std::vector<simcore::Unit> test = gather(dataset, split.test);

  BenchmarkResult result;
  result.config_hash = config_hash(config);
  result.seed = config.seed;
  result.units = dataset.units.size();
  result.k = dataset.k;
  result.fold_sizes = {train.size(), validation.size(), test.size()};
  const TrainingSettings settings = TrainingSettings::from(config);

  for (Method method : config.methods) {
    const std::string name(method_name(method));
    if (log) {
      log->record("hpo/" + name, "train");
      log->record("hpo/" + name, "validation");
    }
    SearchResult search =
        hpo_search(method, settings, train, validation, config.hpo_budget,
                   derive_seed(config.seed, "hpo", {method_key(method)}), result.config_hash);
    if (log) log->record("test/" + name, "test");
    Rng bootstrap_rng = derive_rng(config.seed, "bootstrap", {method_key(method)});
    MethodResult entry;
    entry.method = method;
    entry.test = evalstats::counterfactual_rmse(*search.best_model, data.oracle, test,
                                                bootstrap_rng, config.bootstrap_resamples);
    entry.best = search.runs[search.best];
    entry.best.test = entry.test;
    entry.runs = std::move(search.runs);
    result.methods.push_back(std::move(entry));
  }
  return result;
}

std::string summary_json(const BenchmarkResult& result, const ExperimentConfig& config) {
  nlohmann::ordered_json root;
  root["config_hash"] = result.config_hash;
  root["seed"] = result.seed;
  root["units"] = result.units;
  root["k"] = result.k;
  root["folds"] = {{"train", result.fold_sizes[0]},
                   {"validation", result.fold_sizes[1]},
                   {"test", result.fold_sizes[2]}};
  root["hpo_budget"] = config.hpo_budget;
  nlohmann::ordered_json methods = nlohmann::ordered_json::array();
  for (const MethodResult& m : result.methods) {
    nlohmann::ordered_json j;
    j["method"] = std::string(method_name(m.method));
    j["rmse"] = m.test.point;
    j["ci_lo"] = m.test.lower;
    j["ci_hi"] = m.test.upper;
    j["n_resamples"] = m.test.n_resamples;
    j["selected"] = run_json(m.best, config.record_timing);
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const RunRecord& run : m.runs) runs.push_back(run_json(run, config.record_timing));
    j["runs"] = runs;
    methods.push_back(j);
  }
  root["methods"] = methods;
  return root.dump(2) + "\n";
}

std::string results_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "method,rmse,ci_lo,ci_hi,validation_rmse,runs\n";
  for (const MethodResult& m : result.methods) {
    out << method_name(m.method) << ',' << format_double(m.test.point) << ','
        << format_double(m.test.lower) << ',' << format_double(m.test.upper) << ','
        << format_double(m.best.validation_rmse) << ',' << m.runs.size() << '\n';
  }
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void write_benchmark(const BenchmarkResult& result, const ExperimentConfig& config,
                     const std::filesystem::path& directory) {
  write_text_file(directory / "summary.json", summary_json(result, config));
  write_text_file(directory / "results.csv", results_csv(result));
}

}  // namespace ncore::harness
