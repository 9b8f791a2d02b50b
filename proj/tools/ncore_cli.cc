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
// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 data error, 3 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"
#include "ncore/diffcore/checkpoint.h"
#include "ncore/evalstats/metrics.h"
#include "ncore/harness/benchmark.h"
#include "ncore/harness/config.h"
#include "ncore/harness/dataset_io.h"
#include "ncore/harness/hpo.h"
#include "ncore/harness/methods.h"
#include "ncore/harness/split.h"
#include "ncore/harness/sweep.h"
#include "ncore/model/ncore_model.h"

namespace {

using namespace ncore;
using namespace ncore::harness;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

// Writes to `path`, or stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

SplitRatios parse_ratios(const std::vector<double>& values) {
  if (values.size() != 3) throw ConfigError("--ratios takes three values");
  SplitRatios ratios{values[0], values[1], values[2]};
  ratios.validate();
  return ratios;
}

struct FoldData {
  LoadedDataset data;
  Split split;
  std::vector<simcore::Unit> train, validation, test;
};

FoldData load_folds(const std::string& data_path, const std::string& split_path) {
  FoldData out{load_dataset(data_path), {}, {}, {}, {}};
  out.split = load_split(split_path, out.data.dataset);
  out.train = gather(out.data.dataset, out.split.train);
  out.validation = gather(out.data.dataset, out.split.validation);
  out.test = gather(out.data.dataset, out.split.test);
  return out;
}

nlohmann::ordered_json report_json(const evalstats::MetricReport& report) {
  nlohmann::ordered_json j;
  j["rmse"] = report.point;
  j["ci_lo"] = report.lower;
  j["ci_hi"] = report.upper;
  j["n_resamples"] = report.n_resamples;
  return j;
}

// Options shared by the config-driven commands; unset flags leave the config
// file's values in place.
struct ConfigOverrides {
  std::string config_path;
  std::vector<std::string> methods;
  std::optional<int> hpo_budget;
  std::vector<double> ratios;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> seed;
  std::optional<int> epochs;
  std::optional<int> patience;
  std::optional<int> balancing_dim;
  std::optional<int> knn_neighbors;
  std::optional<std::size_t> bootstrap_resamples;
  std::optional<int> workers;
  bool record_timing = false;
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "Experiment config (YAML)");
    app->add_option("--methods", methods, "Methods to run")->delimiter(',');
    app->add_option("--hpo-budget", hpo_budget, "Hyperparameter runs per method");
    app->add_option("--ratios", ratios, "Train,validation,test ratios")->delimiter(',');
    app->add_option("--seeds", seeds, "Replicate seeds")->delimiter(',');
    app->add_option("--seed", seed, "Master seed");
    app->add_option("--epochs", epochs, "Maximum training epochs");
    app->add_option("--patience", patience, "Early-stopping patience");
    app->add_option("--balancing-dim", balancing_dim, "Balancing score dimension");
    app->add_option("--knn-neighbors", knn_neighbors, "Neighbours for the kNN composite");
    app->add_option("--bootstrap-resamples", bootstrap_resamples, "Bootstrap resamples");
    app->add_option("--workers", workers, "Worker threads");
    app->add_flag("--record-timing", record_timing, "Include wall-clock times in output");
    app->add_option("--out", output, "Output path");
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_experiment_config(config_path);
    if (!methods.empty()) {
      config.methods.clear();
      for (const std::string& m : methods) config.methods.push_back(parse_method(m));
    }
    if (hpo_budget) config.hpo_budget = *hpo_budget;
    if (!ratios.empty()) config.ratios = parse_ratios(ratios);
    if (!seeds.empty()) config.seeds = seeds;
    if (seed) config.seed = *seed;
    if (epochs) config.epochs = *epochs;
    if (patience) config.patience = *patience;
    if (balancing_dim) config.balancing_dim = *balancing_dim;
    if (knn_neighbors) config.knn_neighbors = *knn_neighbors;
    if (bootstrap_resamples) config.bootstrap_resamples = *bootstrap_resamples;
    if (workers) config.workers = *workers;
    if (record_timing) config.record_timing = true;
    if (!output.empty()) config.output = output;
    return config;
  }
};

struct SimulationFlags {
  std::size_t n = 1000;
  int k = 4;
  double kappa = 10.0;
  std::uint64_t seed = 0;
};

int run(int argc, char** argv) {
  CLI::App app{"Counterfactual outcomes under combinations of treatments"};
  app.require_subcommand(1);

  // simulate
  SimulationFlags sim;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("--n", sim.n, "Number of units");
  simulate->add_option("--k", sim.k, "Number of treatments");
  simulate->add_option("--kappa", sim.kappa, "Treatment assignment bias");
  simulate->add_option("--seed", sim.seed, "Simulation seed");
  simulate->add_option("--out", sim_out, "Output CSV (a .schema.yaml sidecar is written next to it)")
      ->required();

  // split
  std::string split_data, split_out;
  std::vector<double> split_ratios = {0.6, 0.2, 0.2};
  std::uint64_t split_seed = 0;
  CLI::App* split_cmd = app.add_subcommand("split", "Stratified train/validation/test split");
  split_cmd->add_option("--data", split_data, "Dataset CSV")->required();
  split_cmd->add_option("--ratios", split_ratios, "Train,validation,test ratios")
      ->delimiter(',');
  split_cmd->add_option("--seed", split_seed, "Split seed");
  split_cmd->add_option("--out", split_out, "Output split CSV")->required();

  // train
  std::string train_data, train_split, train_out, train_method = "ncore";
  Candidate train_candidate;
  model::NCoREConfig& net = train_candidate.network;
  CLI::App* train_cmd = app.add_subcommand("train", "Train one NCoRE network");
  train_cmd->add_option("--data", train_data, "Dataset CSV")->required();
  train_cmd->add_option("--split", train_split, "Split CSV")->required();
  train_cmd->add_option("--method", train_method, "ncore or ncore_balanced");
  train_cmd->add_option("--hidden-units", net.hidden_units, "Hidden units per layer");
  train_cmd->add_option("--base-layers", net.base_layers, "Base layers");
  train_cmd->add_option("--batch-size", net.batch_size, "Batch size");
  train_cmd->add_option("--l2", net.l2, "L2 penalty");
  train_cmd->add_option("--learning-rate", net.learning_rate, "Learning rate");
  train_cmd->add_option("--dropout", net.dropout, "Dropout rate");
  train_cmd->add_option("--epochs", net.epochs, "Maximum epochs");
  train_cmd->add_option("--patience", net.patience, "Early-stopping patience");
  train_cmd->add_option("--balancing-dim", train_candidate.balancing_dim,
                        "Balancing score dimension");
  train_cmd->add_option("--seed", net.seed, "Training seed");
  train_cmd->add_option("--out", train_out, "Checkpoint path")->required();

  // evaluate
  std::string eval_data, eval_split, eval_checkpoint, eval_out;
  std::size_t eval_resamples = evalstats::kDefaultBootstrapResamples;
  std::uint64_t eval_seed = 0;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score a checkpoint on the test fold");
  evaluate->add_option("--data", eval_data, "Dataset CSV")->required();
  evaluate->add_option("--split", eval_split, "Split CSV")->required();
  evaluate->add_option("--checkpoint", eval_checkpoint, "Checkpoint path")->required();
  evaluate->add_option("--bootstrap-resamples", eval_resamples, "Bootstrap resamples");
  evaluate->add_option("--seed", eval_seed, "Bootstrap seed");
  evaluate->add_option("--out", eval_out, "Output JSON (default stdout)");

  // hpo
  std::string hpo_data, hpo_split, hpo_method = "ncore", hpo_out;
  int hpo_budget = 30;
  std::uint64_t hpo_seed = 0;
  TrainingSettings hpo_settings;
  CLI::App* hpo = app.add_subcommand("hpo", "Random hyperparameter search for one method");
  hpo->add_option("--data", hpo_data, "Dataset CSV")->required();
  hpo->add_option("--split", hpo_split, "Split CSV")->required();
  hpo->add_option("--method", hpo_method, "Method name");
  hpo->add_option("--hpo-budget", hpo_budget, "Number of runs");
  hpo->add_option("--epochs", hpo_settings.epochs, "Maximum epochs");
  hpo->add_option("--patience", hpo_settings.patience, "Early-stopping patience");
  hpo->add_option("--balancing-dim", hpo_settings.balancing_dim, "Balancing score dimension");
  hpo->add_option("--knn-neighbors", hpo_settings.knn_neighbors, "kNN neighbours");
  hpo->add_option("--seed", hpo_seed, "Search seed");
  hpo->add_option("--out", hpo_out, "Output JSON (default stdout)");

  // benchmark
  ConfigOverrides bench_flags;
  CLI::App* benchmark = app.add_subcommand("benchmark", "Split, search and test every method");
  bench_flags.attach(benchmark);

  // sweep
  ConfigOverrides sweep_flags;
  std::string sweep_axis, seed_summary;
  std::vector<double> sweep_values;
  bool quiet = false;
  CLI::App* sweep = app.add_subcommand("sweep", "Benchmarks across k, n or kappa");
  sweep_flags.attach(sweep);
  sweep->add_option("--axis", sweep_axis, "k, n or kappa");
  sweep->add_option("--values", sweep_values, "Axis values")->delimiter(',');
  sweep->add_option("--seed-summary", seed_summary,
                    "Also write per-value means with intervals over seeds");
  sweep->add_flag("--quiet", quiet, "No progress on stderr");

  // export-truth
  std::string truth_data, truth_out;
  CLI::App* truth = app.add_subcommand("export-truth", "Write every counterfactual outcome");
  truth->add_option("--data", truth_data, "Dataset CSV with simulation provenance")->required();
  truth->add_option("--out", truth_out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*simulate) {
    simcore::SimulationConfig config;
    config.n = sim.n;
    config.k = sim.k;
    config.kappa = sim.kappa;
    config.seed = sim.seed;
    config.validate();
    const simcore::SimulationResult result = simcore::generate_dataset(config);
    save_dataset(sim_out, result.dataset, config);
    std::cerr << "wrote " << result.dataset.units.size() << " units to " << sim_out << "\n";
  } else if (*split_cmd) {
    const LoadedDataset loaded = load_dataset(split_data);
    Rng rng = derive_rng(split_seed, "split");
    const Split split = split_dataset(loaded.dataset, parse_ratios(split_ratios), rng);
    save_split(split_out, loaded.dataset, split);
    std::cerr << "folds " << split.train.size() << "/" << split.validation.size() << "/"
              << split.test.size() << " written to " << split_out << "\n";
  } else if (*train_cmd) {
    const FoldData folds = load_folds(train_data, train_split);
    train_candidate.method = parse_method(train_method);
    if (!is_neural(train_candidate.method)) {
      throw ConfigError("train only handles ncore and ncore_balanced");
    }
    net.k = folds.data.dataset.k;
    net.p = static_cast<int>(folds.data.dataset.schema.p);
    model::TrainResult result;
    const model::NCoREModel trained =
        train_network(train_candidate, folds.train, folds.validation, &result);
    std::ostringstream buffer;
    trained.save(buffer);
    write_text_file(train_out, buffer.str());
    std::cerr << "best epoch " << result.best_epoch << ", validation RMSE "
              << format_double(result.best_validation_rmse) << "\n";
  } else if (*evaluate) {
    const FoldData folds = load_folds(eval_data, eval_split);
    std::ifstream in(eval_checkpoint);
    if (!in) throw IoError("cannot open checkpoint " + eval_checkpoint);
    const model::NCoREModel net_model =
        model::NCoREModel::from_checkpoint(diffcore::load_checkpoint(in, eval_checkpoint));
    if (net_model.config().k != folds.data.dataset.k ||
        net_model.config().p != static_cast<int>(folds.data.dataset.schema.p)) {
      throw ValidationError("checkpoint shape does not match the dataset");
    }
    const simcore::OutcomeOracle oracle = oracle_for(folds.data);
    const evalstats::FunctionPredictor predictor(
        [&](std::span<const double> x, simcore::TreatmentSet t) {
          return net_model.forward(x, t).outcome;
        });
    Rng rng = derive_rng(eval_seed, "bootstrap");
    const evalstats::MetricReport report =
        evalstats::counterfactual_rmse(predictor, oracle, folds.test, rng, eval_resamples);
    nlohmann::ordered_json j;
    j["checkpoint"] = eval_checkpoint;
    j["test_units"] = folds.test.size();
    j["counterfactual"] = report_json(report);
    j["factual_rmse"] = evalstats::factual_rmse(predictor, folds.test);
    emit(eval_out, j.dump(2) + "\n");
  } else if (*hpo) {
    const FoldData folds = load_folds(hpo_data, hpo_split);
    const Method method = parse_method(hpo_method);
    const SearchResult search = hpo_search(method, hpo_settings, folds.train,
                                           folds.validation, hpo_budget, hpo_seed);
    nlohmann::ordered_json j;
    j["method"] = std::string(method_name(method));
    j["best_run"] = search.runs[search.best].run_index;
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const RunRecord& r : search.runs) {
      nlohmann::ordered_json row;
      row["run"] = r.run_index;
      nlohmann::ordered_json hp = nlohmann::ordered_json::object();
      for (const auto& [name, value] : r.hyperparameters) hp[name] = value;
      row["hyperparameters"] = hp;
      if (r.diverged) {
        row["validation_rmse"] = nullptr;
        row["failure"] = r.failure;
      } else {
        row["validation_rmse"] = r.validation_rmse;
      }
      runs.push_back(row);
    }
    j["runs"] = runs;
    emit(hpo_out, j.dump(2) + "\n");
  } else if (*benchmark) {
    const ExperimentConfig config = bench_flags.resolve();
    config.validate();
    const BenchmarkResult result = run_benchmark(config);
    if (config.output.empty()) {
      std::cout << results_csv(result);
    } else {
      write_benchmark(result, config, config.output);
      std::cerr << "wrote " << (config.output / "summary.json").string() << " and "
                << (config.output / "results.csv").string() << "\n";
    }
  } else if (*sweep) {
    ExperimentConfig config = sweep_flags.resolve();
    if (!sweep_axis.empty()) config.sweep_axis = sweep_axis;
    if (!sweep_values.empty()) config.sweep_values = sweep_values;
    if (config.sweep_axis.empty()) throw ConfigError("sweep needs --axis or a sweep section");
    if (config.sweep_values.empty()) config.sweep_values = default_sweep_values(config.sweep_axis);
    config.validate();
    SweepProgress progress;
    if (!quiet) {
      progress = [](std::size_t done, std::size_t total) {
        std::cerr << "\rcells " << done << "/" << total << std::flush;
        if (done == total) std::cerr << "\n";
      };
    }
    const std::vector<SweepRow> rows =
        run_sweep(config, config.sweep_axis, config.sweep_values, progress);
    emit(config.output.string(), sweep_csv(rows));
    if (!seed_summary.empty()) {
      write_text_file(seed_summary,
                      sweep_seed_summary_csv(rows, config.bootstrap_resamples, config.seed));
    }
  } else if (*truth) {
    const LoadedDataset loaded = load_dataset(truth_data);
    export_truth(truth_out, loaded.dataset, oracle_for(loaded));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ncore::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ncore::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ncore::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ncore::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ncore::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const ncore::DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
