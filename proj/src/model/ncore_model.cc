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
#include "ncore/model/ncore_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"

namespace ncore::model {
namespace {

using diffcore::ActivationKind;
using diffcore::Matrix;
using diffcore::NodeId;
using diffcore::ParamId;

template <typename T, std::size_t N>
bool one_of(T value, const T (&choices)[N]) {
  return std::find(std::begin(choices), std::end(choices), value) !=
         std::end(choices);
}

// out = W h + b with the dot products accumulated in ascending column order.
void affine_into(const Matrix& w, const Matrix& b, std::span<const double> h,
                 std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < w.cols(); ++j) acc += w(i, j) * h[j];
    out[i] = acc + b(i, 0);
  }
}

void activate(ActivationKind kind, std::vector<double>& h) {
  if (kind == ActivationKind::kRelu) {
    for (double& v : h) v = v > 0.0 ? v : 0.0;
  }
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (std::string_view cell : split(trim(text), ' ')) {
    auto value = parse_double(cell);
    if (!value) throw ParseError("checkpoint", 0, "bad number in '" + key + "'");
    out.push_back(*value);
  }
  return out;
}

}  // namespace

void NCoREConfig::validate() const {
  if (k <= 0) throw ConfigError("ncore: k must be at least 1");
  if (k > simcore::kMaxTreatments) throw ConfigError("ncore: k must be <= 20");
  if (p <= 0) throw ConfigError("ncore: input dimension p must be at least 1");
  if (hidden_units <= 0) throw ConfigError("ncore: hidden units must be positive");
  if (base_layers <= 0) throw ConfigError("ncore: need at least one base layer");
  if (arm_depth <= 0) throw ConfigError("ncore: arm depth must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("ncore: dropout must be in [0, 1)");
  }
  if (!(l2 >= 0.0)) throw ConfigError("ncore: l2 must be non-negative");
  if (!(learning_rate > 0.0)) throw ConfigError("ncore: learning rate must be positive");
  if (batch_size <= 0) throw ConfigError("ncore: batch size must be positive");
  if (epochs <= 0) throw ConfigError("ncore: epochs must be positive");
  if (patience < 0) throw ConfigError("ncore: patience must be >= 0");
}

bool NCoREConfig::on_search_grid() const {
  return one_of(hidden_units, kHiddenUnitChoices) &&
         one_of(base_layers, kBaseLayerChoices) &&
         one_of(batch_size, kBatchSizeChoices) && one_of(l2, kL2Choices) &&
         one_of(learning_rate, kLearningRateChoices) &&
         one_of(dropout, kDropoutChoices);
}

NCoREModel::NCoREModel(NCoREConfig config) : config_(config) {
  config_.validate();
  Rng rng = derive_rng(config_.seed, "ncore_init");
  const Eigen::Index n = config_.hidden_units;
  for (int l = 0; l < config_.base_layers; ++l) {
    const Eigen::Index fan_in = l == 0 ? config_.p : n;
    params_.add("base." + std::to_string(l) + ".weight",
                diffcore::glorot_uniform(n, fan_in, rng));
    params_.add("base." + std::to_string(l) + ".bias", Matrix::Zero(n, 1));
  }
  for (int j = 0; j < config_.k; ++j) {
    for (int s = 0; s < config_.arm_depth; ++s) {
      const std::string prefix =
          "arm." + std::to_string(j) + "." + std::to_string(s);
      params_.add(prefix + ".weight", diffcore::glorot_uniform(n, n, rng));
      params_.add(prefix + ".bias", Matrix::Zero(n, 1));
    }
  }
  params_.add("head.weight", diffcore::glorot_uniform(1, n, rng));
  params_.add("head.bias", Matrix::Zero(1, 1));
  bind_layers();
  normalizer_.input_mean.assign(static_cast<std::size_t>(config_.p), 0.0);
  normalizer_.input_scale.assign(static_cast<std::size_t>(config_.p), 1.0);
}

NCoREModel::NCoREModel(NCoREConfig config, diffcore::ParamStore params)
    : config_(config), params_(std::move(params)) {
  config_.validate();
  bind_layers();
  normalizer_.input_mean.assign(static_cast<std::size_t>(config_.p), 0.0);
  normalizer_.input_scale.assign(static_cast<std::size_t>(config_.p), 1.0);
}

void NCoREModel::bind_layers() {
  auto lookup = [this](const std::string& name) {
    auto id = params_.find(name);
    if (!id) throw ConfigError("ncore: missing parameter '" + name + "'");
    return *id;
  };
  auto check = [this](ParamId id, Eigen::Index rows, Eigen::Index cols) {
    const Matrix& value = params_.value(id);
    if (value.rows() != rows || value.cols() != cols) {
      throw DimensionError("ncore: parameter '" + params_.name(id) +
                           "' has the wrong shape");
    }
  };
  const Eigen::Index n = config_.hidden_units;
  base_.clear();
  arms_.assign(static_cast<std::size_t>(config_.k), {});
  for (int l = 0; l < config_.base_layers; ++l) {
    Layer layer{lookup("base." + std::to_string(l) + ".weight"),
                lookup("base." + std::to_string(l) + ".bias")};
    check(layer.weight, n, l == 0 ? config_.p : n);
    check(layer.bias, n, 1);
    base_.push_back(layer);
  }
  for (int j = 0; j < config_.k; ++j) {
    for (int s = 0; s < config_.arm_depth; ++s) {
      const std::string prefix =
          "arm." + std::to_string(j) + "." + std::to_string(s);
      Layer layer{lookup(prefix + ".weight"), lookup(prefix + ".bias")};
      check(layer.weight, n, n);
      check(layer.bias, n, 1);
      arms_[j].push_back(layer);
    }
  }
  head_ = Layer{lookup("head.weight"), lookup("head.bias")};
  check(head_.weight, 1, n);
  check(head_.bias, 1, 1);
  if (params_.size() != base_.size() * 2 +
                            static_cast<std::size_t>(config_.k * config_.arm_depth) * 2 + 2) {
    throw ConfigError("ncore: checkpoint holds unexpected parameters");
  }
}

std::size_t NCoREModel::expected_parameter_count(const NCoREConfig& config) {
  const std::size_t n = static_cast<std::size_t>(config.hidden_units);
  const std::size_t p = static_cast<std::size_t>(config.p);
  const std::size_t layers = static_cast<std::size_t>(config.base_layers);
  const std::size_t arms = static_cast<std::size_t>(config.k) *
                           static_cast<std::size_t>(config.arm_depth);
  return (p * n + n) + (layers - 1) * (n * n + n) + arms * (n * n + n) + n + 1;
}

std::vector<double> NCoREModel::normalized_input(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(config_.p)) {
    throw DimensionError("ncore: input has length " + std::to_string(x.size()) +
                         ", model expects p = " + std::to_string(config_.p));
  }
  std::vector<double> out(x.size());
  for (std::size_t q = 0; q < x.size(); ++q) {
    out[q] = (x[q] - normalizer_.input_mean[q]) / normalizer_.input_scale[q];
  }
  return out;
}

std::vector<double> NCoREModel::base_representation(std::span<const double> x) const {
  std::vector<double> h = normalized_input(x);
  std::vector<double> next;
  for (const Layer& layer : base_) {
    affine_into(params_.value(layer.weight), params_.value(layer.bias), h, next);
    activate(config_.activation, next);
    h.swap(next);
  }
  return h;
}

void NCoREModel::apply_arm(int treatment, std::vector<double>& h,
                           std::vector<double>& scratch) const {
  for (const Layer& layer : arms_[treatment]) {
    affine_into(params_.value(layer.weight), params_.value(layer.bias), h, scratch);
    if (config_.arm_activation) activate(config_.activation, scratch);
    h.swap(scratch);
  }
}

double NCoREModel::head(std::span<const double> h) const {
  std::vector<double> out;
  affine_into(params_.value(head_.weight), params_.value(head_.bias), h, out);
  return out[0] * normalizer_.target_scale + normalizer_.target_mean;
}

Prediction NCoREModel::forward(std::span<const double> x,
                               simcore::TreatmentSet treatments) const {
  if (treatments.empty()) {
    throw ContractError("ncore: forward requires a non-empty treatment set");
  }
  if (treatments.k() != config_.k) {
    throw DimensionError("ncore: treatment set built for k = " +
                         std::to_string(treatments.k()));
  }
  std::vector<double> h = base_representation(x);
  std::vector<double> scratch;
  for (int j : treatments.members()) apply_arm(j, h, scratch);
  Prediction prediction;
  prediction.outcome = head(h);
  prediction.hidden = std::move(h);
  return prediction;
}

std::vector<double> NCoREModel::predict_all_combinations(
    std::span<const double> x) const {
  const std::size_t count = simcore::combination_count(config_.k);
  std::vector<double> out(count);
  // Depth-first over masks, extending each set with a higher index so every
  // arm sees exactly the representation the ascending-order recursion gives.
  struct Frame {
    std::vector<double> h;
    std::uint32_t mask;
    int next;
  };
  std::vector<Frame> stack;
  stack.push_back({base_representation(x), 0u, 0});
  std::vector<double> scratch;
  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    for (int j = config_.k - 1; j >= frame.next; --j) {
      std::vector<double> h = frame.h;
      apply_arm(j, h, scratch);
      const std::uint32_t mask = frame.mask | (1u << j);
      out[mask - 1] = head(h);
      if (j + 1 < config_.k) stack.push_back({std::move(h), mask, j + 1});
    }
  }
  return out;
}

NodeId NCoREModel::forward_graph(diffcore::Tape& tape, const Matrix& inputs,
                                 std::span<const std::uint32_t> masks,
                                 bool training, Rng& rng) const {
  if (inputs.rows() != config_.p) {
    throw DimensionError("ncore: batch has " + std::to_string(inputs.rows()) +
                         " features, model expects " + std::to_string(config_.p));
  }
  if (static_cast<std::size_t>(inputs.cols()) != masks.size()) {
    throw DimensionError("ncore: one mask per batch column required");
  }
  Matrix normalized = inputs;
  for (Eigen::Index q = 0; q < inputs.rows(); ++q) {
    normalized.row(q).array() =
        (normalized.row(q).array() - normalizer_.input_mean[q]) /
        normalizer_.input_scale[q];
  }
  NodeId h = tape.input(std::move(normalized));
  for (const Layer& layer : base_) {
    h = tape.affine(layer.weight, layer.bias, h);
    h = tape.activation(config_.activation, h);
    h = tape.dropout(h, config_.dropout, training, rng);
  }
  std::vector<Eigen::Index> columns;
  for (int j = 0; j < config_.k; ++j) {
    columns.clear();
    for (std::size_t c = 0; c < masks.size(); ++c) {
      if (masks[c] == 0) throw ContractError("ncore: empty treatment set in batch");
      if ((masks[c] >> j) & 1u) columns.push_back(static_cast<Eigen::Index>(c));
    }
    if (columns.empty()) continue;
    for (const Layer& layer : arms_[j]) {
      h = tape.masked_affine(layer.weight, layer.bias, h, columns);
      if (config_.arm_activation) {
        h = tape.masked_activation(config_.activation, h, columns);
      }
    }
  }
  return tape.affine(head_.weight, head_.bias, h);
}

void NCoREModel::save(std::ostream& out) const {
  std::map<std::string, std::string> meta;
  meta["model"] = "ncore";
  meta["k"] = std::to_string(config_.k);
  meta["p"] = std::to_string(config_.p);
  meta["hidden_units"] = std::to_string(config_.hidden_units);
  meta["base_layers"] = std::to_string(config_.base_layers);
  meta["arm_depth"] = std::to_string(config_.arm_depth);
  meta["activation"] = std::string(diffcore::to_string(config_.activation));
  meta["arm_activation"] = config_.arm_activation ? "1" : "0";
  meta["dropout"] = format_double(config_.dropout);
  meta["l2"] = format_double(config_.l2);
  meta["learning_rate"] = format_double(config_.learning_rate);
  meta["optimizer"] = std::string(diffcore::to_string(config_.optimizer));
  meta["batch_size"] = std::to_string(config_.batch_size);
  meta["epochs"] = std::to_string(config_.epochs);
  meta["patience"] = std::to_string(config_.patience);
  meta["standardize"] = config_.standardize ? "1" : "0";
  meta["seed"] = std::to_string(config_.seed);
  meta["input_mean"] = join(normalizer_.input_mean);
  meta["input_scale"] = join(normalizer_.input_scale);
  meta["target_mean"] = format_double(normalizer_.target_mean);
  meta["target_scale"] = format_double(normalizer_.target_scale);
  diffcore::save_checkpoint(out, params_, meta);
}

NCoREModel NCoREModel::from_checkpoint(const diffcore::Checkpoint& checkpoint) {
  const auto& meta = checkpoint.metadata;
  auto get = [&meta](const std::string& key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) {
      throw ParseError("checkpoint", 0, "missing metadata '" + key + "'");
    }
    return it->second;
  };
  auto get_int = [&](const std::string& key) {
    auto value = parse_int(get(key));
    if (!value) throw ParseError("checkpoint", 0, "bad integer in '" + key + "'");
    return *value;
  };
  auto get_double = [&](const std::string& key) {
    auto value = parse_double(get(key));
    if (!value) throw ParseError("checkpoint", 0, "bad number in '" + key + "'");
    return *value;
  };
  if (get("model") != "ncore") {
    throw ParseError("checkpoint", 0, "not an ncore checkpoint");
  }
  NCoREConfig config;
  config.k = static_cast<int>(get_int("k"));
  config.p = static_cast<int>(get_int("p"));
  config.hidden_units = static_cast<int>(get_int("hidden_units"));
  config.base_layers = static_cast<int>(get_int("base_layers"));
  config.arm_depth = static_cast<int>(get_int("arm_depth"));
  config.activation = diffcore::parse_activation(get("activation"));
  config.arm_activation = get_int("arm_activation") != 0;
  config.dropout = get_double("dropout");
  config.l2 = get_double("l2");
  config.learning_rate = get_double("learning_rate");
  config.optimizer = diffcore::parse_optimizer(get("optimizer"));
  config.batch_size = static_cast<int>(get_int("batch_size"));
  config.epochs = static_cast<int>(get_int("epochs"));
  config.patience = static_cast<int>(get_int("patience"));
  config.standardize = get_int("standardize") != 0;
  config.seed = std::stoull(get("seed"));

  diffcore::ParamStore params;
  for (std::size_t i = 0; i < checkpoint.params.size(); ++i) {
    const diffcore::ParamId id{i};
    params.add(checkpoint.params.name(id), checkpoint.params.value(id));
  }
  NCoREModel model(config, std::move(params));
  model.normalizer_.input_mean = parse_list(get("input_mean"), "input_mean");
  model.normalizer_.input_scale = parse_list(get("input_scale"), "input_scale");
  if (model.normalizer_.input_mean.size() != static_cast<std::size_t>(config.p) ||
      model.normalizer_.input_scale.size() != static_cast<std::size_t>(config.p)) {
    throw ParseError("checkpoint", 0, "normalizer length differs from p");
  }
  model.normalizer_.target_mean = get_double("target_mean");
  model.normalizer_.target_scale = get_double("target_scale");
  return model;
}

}  // namespace ncore::model
