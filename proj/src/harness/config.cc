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
#include "ncore/harness/config.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"
#include "yaml_util.h"

namespace ncore::harness {

namespace internal {

YAML::Node number(double value) { return YAML::Node(format_double(value)); }

template <typename T>
T required(const YAML::Node& node, const std::string& key, const std::string& source) {
  const YAML::Node child = node[key];
  if (!child) throw ParseError(source, 0, "missing key '" + key + "'");
  try {
    return child.as<T>();
  } catch (const YAML::Exception& e) {
    throw ParseError(source, static_cast<std::size_t>(child.Mark().line + 1),
                     "bad value for '" + key + "': " + e.what());
  }
}

template int required<int>(const YAML::Node&, const std::string&, const std::string&);
template double required<double>(const YAML::Node&, const std::string&, const std::string&);
template std::size_t required<std::size_t>(const YAML::Node&, const std::string&,
                                           const std::string&);
template unsigned long long required<unsigned long long>(const YAML::Node&,
                                                         const std::string&,
                                                         const std::string&);
template std::string required<std::string>(const YAML::Node&, const std::string&,
                                           const std::string&);
template std::vector<std::size_t> required<std::vector<std::size_t>>(
    const YAML::Node&, const std::string&, const std::string&);
template std::vector<double> required<std::vector<double>>(const YAML::Node&,
                                                           const std::string&,
                                                           const std::string&);

YAML::Node schema_to_yaml(const simcore::CovariateSchema& schema) {
  YAML::Node node;
  node["p"] = schema.p;
  YAML::Node discrete(YAML::NodeType::Sequence);
  for (std::size_t index : schema.discrete) discrete.push_back(index);
  discrete.SetStyle(YAML::EmitterStyle::Flow);
  node["discrete"] = discrete;
  YAML::Node rates(YAML::NodeType::Sequence);
  for (double rate : schema.discrete_rates) rates.push_back(number(rate));
  rates.SetStyle(YAML::EmitterStyle::Flow);
  node["discrete_rates"] = rates;
  YAML::Node continuous(YAML::NodeType::Sequence);
  for (std::size_t index : schema.continuous) continuous.push_back(index);
  continuous.SetStyle(YAML::EmitterStyle::Flow);
  node["continuous"] = continuous;
  YAML::Node ranges(YAML::NodeType::Sequence);
  for (const simcore::ContinuousRange& range : schema.ranges) {
    YAML::Node pair(YAML::NodeType::Sequence);
    pair.push_back(number(range.min));
    pair.push_back(number(range.max));
    pair.SetStyle(YAML::EmitterStyle::Flow);
    ranges.push_back(pair);
  }
  ranges.SetStyle(YAML::EmitterStyle::Flow);
  node["ranges"] = ranges;
  return node;
}

simcore::CovariateSchema schema_from_yaml(const YAML::Node& node,
                                          const std::string& source) {
  if (node.IsScalar() && node.as<std::string>() == "default") {
    return simcore::CovariateSchema::default_hiv();
  }
  if (!node.IsMap()) throw ParseError(source, 0, "schema must be a map or 'default'");
  simcore::CovariateSchema schema;
  schema.p = required<std::size_t>(node, "p", source);
  schema.discrete = required<std::vector<std::size_t>>(node, "discrete", source);
  schema.discrete_rates = required<std::vector<double>>(node, "discrete_rates", source);
  schema.continuous = required<std::vector<std::size_t>>(node, "continuous", source);
  const YAML::Node ranges = node["ranges"];
  if (!ranges || !ranges.IsSequence()) {
    throw ParseError(source, 0, "schema: 'ranges' must be a list of [min, max]");
  }
  for (const YAML::Node& pair : ranges) {
    if (!pair.IsSequence() || pair.size() != 2) {
      throw ParseError(source, static_cast<std::size_t>(pair.Mark().line + 1),
                       "schema: each range must be [min, max]");
    }
    schema.ranges.push_back({pair[0].as<double>(), pair[1].as<double>()});
  }
  try {
    schema.validate();
  } catch (const SchemaError& e) {
    throw ValidationError(source + ": " + e.what());
  }
  return schema;
}

}  // namespace internal

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kNCoRE:
      return "ncore";
    case Method::kNCoREBalanced:
      return "ncore_balanced";
    case Method::kRidge:
      return "ridge";
    case Method::kRidgeHamming:
      return "ridge+hamming-fallback";
    case Method::kKnn:
      return "knn";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (Method method : all_methods()) {
    if (method_name(method) == name) return method;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected ncore, ncore_balanced, ridge, "
                    "ridge+hamming-fallback or knn)");
}

const std::vector<Method>& all_methods() {
  static const std::vector<Method> methods = {Method::kNCoRE, Method::kNCoREBalanced,
                                              Method::kRidge, Method::kRidgeHamming,
                                              Method::kKnn};
  return methods;
}

bool is_neural(Method method) {
  return method == Method::kNCoRE || method == Method::kNCoREBalanced;
}

void SplitRatios::validate() const {
  if (!(train > 0.0 && validation > 0.0 && test > 0.0)) {
    throw ConfigError("split ratios must all be positive");
  }
  if (std::abs(train + validation + test - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
}

void ExperimentConfig::validate() const {
  if (dataset.simulate) {
    dataset.simulation.validate();
  } else if (dataset.path.empty()) {
    throw ConfigError("dataset: either 'simulate' or 'load' is required");
  }
  if (methods.empty()) throw ConfigError("at least one method is required");
  if (hpo_budget < 1) throw ConfigError("hpo_budget must be at least 1");
  ratios.validate();
  if (seeds.empty()) throw ConfigError("at least one replicate seed is required");
  if (epochs < 1) throw ConfigError("training.epochs must be at least 1");
  if (patience < 0) throw ConfigError("training.patience must be >= 0");
  if (balancing_dim < 1) throw ConfigError("balancing_dim must be at least 1");
  if (knn_neighbors < 1) throw ConfigError("knn_neighbors must be at least 1");
  if (bootstrap_resamples < 1) throw ConfigError("bootstrap_resamples must be >= 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!sweep_axis.empty()) {
    if (sweep_axis != "k" && sweep_axis != "n" && sweep_axis != "kappa") {
      throw ConfigError("sweep axis must be k, n or kappa");
    }
    if (sweep_values.size() < 2) throw ConfigError("a sweep needs at least two values");
  }
}

ExperimentConfig parse_experiment_config(std::string_view yaml, const std::string& source) {
  using internal::required;
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::ParserException& e) {
    throw ParseError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
  }
  if (!root.IsMap()) throw ParseError(source, 0, "config must be a YAML map");

  ExperimentConfig config;
  try {
    if (const YAML::Node dataset = root["dataset"]) {
      if (const YAML::Node sim = dataset["simulate"]) {
        config.dataset.simulate = true;
        simcore::SimulationConfig& s = config.dataset.simulation;
        if (sim["n"]) s.n = sim["n"].as<std::size_t>();
        if (sim["k"]) s.k = sim["k"].as<int>();
        if (sim["kappa"]) s.kappa = sim["kappa"].as<double>();
        if (sim["seed"]) s.seed = sim["seed"].as<std::uint64_t>();
        if (sim["schema"]) s.schema = internal::schema_from_yaml(sim["schema"], source);
      } else if (const YAML::Node load = dataset["load"]) {
        config.dataset.simulate = false;
        config.dataset.path = load.as<std::string>();
      } else {
        throw ParseError(source, 0, "dataset needs 'simulate' or 'load'");
      }
    }
    if (const YAML::Node methods = root["methods"]) {
      config.methods.clear();
      for (const YAML::Node& m : methods) config.methods.push_back(parse_method(m.as<std::string>()));
    }
    if (root["hpo_budget"]) config.hpo_budget = root["hpo_budget"].as<int>();
    if (const YAML::Node split = root["split"]) {
      const auto r = split.as<std::vector<double>>();
      if (r.size() != 3) throw ParseError(source, 0, "split needs three ratios");
      config.ratios = {r[0], r[1], r[2]};
    }
    if (root["seeds"]) config.seeds = root["seeds"].as<std::vector<std::uint64_t>>();
    if (root["seed"]) config.seed = root["seed"].as<std::uint64_t>();
    if (const YAML::Node training = root["training"]) {
      if (training["epochs"]) config.epochs = training["epochs"].as<int>();
      if (training["patience"]) config.patience = training["patience"].as<int>();
    }
    if (root["balancing_dim"]) config.balancing_dim = root["balancing_dim"].as<int>();
    if (root["knn_neighbors"]) config.knn_neighbors = root["knn_neighbors"].as<int>();
    if (root["bootstrap_resamples"]) {
      config.bootstrap_resamples = root["bootstrap_resamples"].as<std::size_t>();
    }
    if (root["workers"]) config.workers = root["workers"].as<int>();
    if (root["record_timing"]) config.record_timing = root["record_timing"].as<bool>();
    if (root["output"]) config.output = root["output"].as<std::string>();
    if (const YAML::Node sweep = root["sweep"]) {
      config.sweep_axis = required<std::string>(sweep, "axis", source);
      config.sweep_values = required<std::vector<double>>(sweep, "values", source);
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(source, static_cast<std::size_t>(e.mark.line + 1), e.msg);
  }
  config.validate();
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_experiment_config(buffer.str(), path.string());
}

std::string to_yaml(const ExperimentConfig& config) {
  using internal::number;
  YAML::Node root;
  if (config.dataset.simulate) {
    const simcore::SimulationConfig& s = config.dataset.simulation;
    YAML::Node sim;
    sim["n"] = s.n;
    sim["k"] = s.k;
    sim["kappa"] = number(s.kappa);
    sim["seed"] = s.seed;
    sim["schema"] = internal::schema_to_yaml(s.schema);
    root["dataset"]["simulate"] = sim;
  } else {
    root["dataset"]["load"] = config.dataset.path.string();
  }
  YAML::Node methods(YAML::NodeType::Sequence);
  for (Method m : config.methods) methods.push_back(std::string(method_name(m)));
  methods.SetStyle(YAML::EmitterStyle::Flow);
  root["methods"] = methods;
  root["hpo_budget"] = config.hpo_budget;
  YAML::Node split(YAML::NodeType::Sequence);
  split.push_back(number(config.ratios.train));
  split.push_back(number(config.ratios.validation));
  split.push_back(number(config.ratios.test));
  split.SetStyle(YAML::EmitterStyle::Flow);
  root["split"] = split;
  YAML::Node seeds(YAML::NodeType::Sequence);
  for (std::uint64_t s : config.seeds) seeds.push_back(s);
  seeds.SetStyle(YAML::EmitterStyle::Flow);
  root["seeds"] = seeds;
  root["seed"] = config.seed;
  root["training"]["epochs"] = config.epochs;
  root["training"]["patience"] = config.patience;
  root["balancing_dim"] = config.balancing_dim;
  root["knn_neighbors"] = config.knn_neighbors;
  root["bootstrap_resamples"] = config.bootstrap_resamples;
  root["workers"] = config.workers;
  root["record_timing"] = config.record_timing;
  if (!config.output.empty()) root["output"] = config.output.string();
  if (!config.sweep_axis.empty()) {
    root["sweep"]["axis"] = config.sweep_axis;
    YAML::Node values(YAML::NodeType::Sequence);
    for (double v : config.sweep_values) values.push_back(number(v));
    values.SetStyle(YAML::EmitterStyle::Flow);
    root["sweep"]["values"] = values;
  }
  YAML::Emitter out;
  out << root;
  return std::string(out.c_str()) + "\n";
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : to_yaml(config)) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace ncore::harness
