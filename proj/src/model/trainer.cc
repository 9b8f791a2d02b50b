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
#include "ncore/model/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ncore/common/errors.h"
#include "ncore/diffcore/optimizer.h"
#include "ncore/diffcore/tape.h"

namespace ncore::model {
namespace {

void fit_normalizer(NCoREModel& model, std::span<const simcore::Unit> units) {
  Normalizer& norm = model.normalizer();
  const std::size_t p = static_cast<std::size_t>(model.config().p);
  const double n = static_cast<double>(units.size());
  norm.input_mean.assign(p, 0.0);
  norm.input_scale.assign(p, 1.0);
  for (const simcore::Unit& unit : units) {
    for (std::size_t q = 0; q < p; ++q) norm.input_mean[q] += unit.x[q];
  }
  for (double& mean : norm.input_mean) mean /= n;
  std::vector<double> var(p, 0.0);
  for (const simcore::Unit& unit : units) {
    for (std::size_t q = 0; q < p; ++q) {
      const double d = unit.x[q] - norm.input_mean[q];
      var[q] += d * d;
    }
  }
  for (std::size_t q = 0; q < p; ++q) {
    const double sd = std::sqrt(var[q] / n);
    norm.input_scale[q] = sd > 1e-12 ? sd : 1.0;
  }
  double mean = 0.0;
  for (const simcore::Unit& unit : units) mean += unit.outcome;
  mean /= n;
  double ss = 0.0;
  for (const simcore::Unit& unit : units) {
    ss += (unit.outcome - mean) * (unit.outcome - mean);
  }
  const double sd = std::sqrt(ss / n);
  norm.target_mean = mean;
  norm.target_scale = sd > 1e-12 ? sd : 1.0;
}

std::string describe(const NCoREConfig& config, std::size_t epoch) {
  std::ostringstream out;
  out << "training diverged at epoch " << epoch << " (N=" << config.hidden_units
      << ", L=" << config.base_layers << ", batch=" << config.batch_size
      << ", lr=" << config.learning_rate << ", l2=" << config.l2
      << ", dropout=" << config.dropout << ", seed=" << config.seed << ")";
  return out.str();
}

}  // namespace

ShuffledBatchSource::ShuffledBatchSource(std::size_t unit_count,
                                         std::size_t batch_size,
                                         std::uint64_t seed)
    : unit_count_(unit_count), batch_size_(batch_size), seed_(seed) {
  if (batch_size_ == 0) throw ConfigError("batch size must be positive");
}

std::vector<std::vector<std::size_t>> ShuffledBatchSource::epoch(
    std::size_t epoch_index) {
  std::vector<std::size_t> order(unit_count_);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = derive_rng(seed_, "shuffle", {epoch_index});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t start = 0; start < order.size(); start += batch_size_) {
    const std::size_t end = std::min(order.size(), start + batch_size_);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

double factual_rmse(const NCoREModel& model, std::span<const simcore::Unit> units) {
  if (units.empty()) throw ContractError("factual_rmse: no units");
  double total = 0.0;
  for (const simcore::Unit& unit : units) {
    const double error = model.forward(unit.x, unit.treatments).outcome - unit.outcome;
    total += error * error;
  }
  return std::sqrt(total / static_cast<double>(units.size()));
}

TrainResult train(NCoREModel& model, std::span<const simcore::Unit> train_units,
                  std::span<const simcore::Unit> validation_units,
                  BatchSource& batches) {
  if (train_units.empty()) throw ContractError("train: empty training set");
  const NCoREConfig& config = model.config();
  if (config.standardize) fit_normalizer(model, train_units);

  diffcore::OptimizerConfig opt_config;
  opt_config.kind = config.optimizer;
  opt_config.learning_rate = config.learning_rate;
  opt_config.weight_decay = config.l2;
  diffcore::Optimizer optimizer(opt_config, model.params());
  diffcore::Tape tape(model.params());
  Rng dropout_rng = derive_rng(config.seed, "dropout");

  const double target_mean = model.normalizer().target_mean;
  const double target_scale = model.normalizer().target_scale;
  const Eigen::Index p = config.p;
  const bool early_stopping = !validation_units.empty() && config.patience > 0;

  TrainResult result;
  diffcore::ParamStore best = model.params();
  double best_rmse = std::numeric_limits<double>::infinity();
  std::size_t since_best = 0;

  for (std::size_t epoch = 0; epoch < static_cast<std::size_t>(config.epochs); ++epoch) {
    double loss_sum = 0.0;
    std::size_t sample_count = 0;
    for (const std::vector<std::size_t>& batch : batches.epoch(epoch)) {
      if (batch.empty()) continue;
      const Eigen::Index b = static_cast<Eigen::Index>(batch.size());
      diffcore::Matrix inputs(p, b);
      diffcore::Matrix targets(1, b);
      std::vector<std::uint32_t> masks(batch.size());
      for (Eigen::Index c = 0; c < b; ++c) {
        const simcore::Unit& unit = train_units[batch[static_cast<std::size_t>(c)]];
        for (Eigen::Index q = 0; q < p; ++q) inputs(q, c) = unit.x[q];
        targets(0, c) = (unit.outcome - target_mean) / target_scale;
        masks[static_cast<std::size_t>(c)] = unit.treatments.mask();
      }
      tape.clear();
      const diffcore::NodeId output =
          model.forward_graph(tape, inputs, masks, true, dropout_rng);
      const diffcore::NodeId loss = tape.mean_squared_error(output, targets);
      const double value = tape.value(loss)(0, 0);
      if (!std::isfinite(value)) throw TrainingDivergence(describe(config, epoch));
      model.params().zero_grad();
      tape.backward(loss);
      optimizer.step(model.params());
      loss_sum += value * static_cast<double>(b);
      sample_count += batch.size();
    }
    result.loss_trace.push_back(loss_sum / static_cast<double>(sample_count) *
                                target_scale * target_scale);

    if (validation_units.empty()) {
      result.best_epoch = epoch;
      continue;
    }
    const double rmse = factual_rmse(model, validation_units);
    if (!std::isfinite(rmse)) throw TrainingDivergence(describe(config, epoch));
    result.validation_trace.push_back(rmse);
    if (rmse < best_rmse) {
      best_rmse = rmse;
      result.best_epoch = epoch;
      since_best = 0;
      if (early_stopping) best.copy_values_from(model.params());
    } else if (early_stopping && ++since_best >= static_cast<std::size_t>(config.patience)) {
      break;
    }
  }
  if (early_stopping) model.params().copy_values_from(best);
  result.best_validation_rmse = validation_units.empty() ? 0.0 : best_rmse;
  return result;
}

}  // namespace ncore::model
