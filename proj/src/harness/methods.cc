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
#include "ncore/harness/methods.h"

#include <algorithm>
#include <random>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"
#include "ncore/matching/balanced_batch.h"
#include "ncore/matching/projector.h"

namespace ncore::harness {
namespace {

template <typename T, std::size_t N>
T pick(const T (&choices)[N], Rng& rng) {
  std::uniform_int_distribution<std::size_t> index(0, N - 1);
  return choices[index(rng)];
}

class NCorePredictor : public FittedModel {
 public:
  NCorePredictor(model::NCoREModel model, double validation_rmse)
      : model_(std::move(model)), validation_rmse_(validation_rmse) {}

  double predict(std::span<const double> x,
                 simcore::TreatmentSet treatments) const override {
    return model_.forward(x, treatments).outcome;
  }
  std::vector<double> predict_all(std::span<const double> x, int) const override {
    return model_.predict_all_combinations(x);
  }
  double validation_rmse() const override { return validation_rmse_; }

 private:
  model::NCoREModel model_;
  double validation_rmse_;
};

class CompositePredictor : public FittedModel {
 public:
  explicit CompositePredictor(baselines::CompositeModel model) : model_(std::move(model)) {}

  double predict(std::span<const double> x,
                 simcore::TreatmentSet treatments) const override {
    return model_.predict(x, treatments);
  }
  double validation_rmse() const override { return validation_rmse_; }
  void set_validation_rmse(double value) { validation_rmse_ = value; }

 private:
  baselines::CompositeModel model_;
  double validation_rmse_ = 0.0;
};

}  // namespace

TrainingSettings TrainingSettings::from(const ExperimentConfig& config) {
  return {config.epochs, config.patience, config.balancing_dim, config.knn_neighbors};
}

Hyperparameters Candidate::describe() const {
  Hyperparameters out;
  if (is_neural(method)) {
    out.emplace_back("hidden_units", std::to_string(network.hidden_units));
    out.emplace_back("base_layers", std::to_string(network.base_layers));
    out.emplace_back("batch_size", std::to_string(network.batch_size));
    out.emplace_back("l2", format_double(network.l2));
    out.emplace_back("learning_rate", format_double(network.learning_rate));
    out.emplace_back("dropout", format_double(network.dropout));
    out.emplace_back("train_seed", std::to_string(network.seed));
  } else if (learner.kind == baselines::BaseLearnerSpec::Kind::kRidge) {
    out.emplace_back("C", format_double(learner.ridge_regularization));
  } else {
    out.emplace_back("neighbors", std::to_string(learner.knn_neighbors));
  }
  return out;
}

bool Candidate::same_point(const Candidate& other) const {
  return method == other.method && describe() == other.describe();
}

Candidate sample_candidate(Method method, const TrainingSettings& settings, int k, int p,
                           std::uint64_t train_seed, Rng& rng) {
  Candidate candidate;
  candidate.method = method;
  switch (method) {
    case Method::kNCoRE:
    case Method::kNCoREBalanced: {
      model::NCoREConfig& net = candidate.network;
      net.k = k;
      net.p = p;
      net.hidden_units = pick(model::kHiddenUnitChoices, rng);
      net.base_layers = pick(model::kBaseLayerChoices, rng);
      net.batch_size = pick(model::kBatchSizeChoices, rng);
      net.l2 = pick(model::kL2Choices, rng);
      net.learning_rate = pick(model::kLearningRateChoices, rng);
      net.dropout = pick(model::kDropoutChoices, rng);
      net.epochs = settings.epochs;
      net.patience = settings.patience;
      net.seed = train_seed;
      candidate.balancing_dim = settings.balancing_dim;
      break;
    }
    case Method::kRidge:
    case Method::kRidgeHamming:
      candidate.learner.kind = baselines::BaseLearnerSpec::Kind::kRidge;
      candidate.learner.ridge_regularization = pick(baselines::kRidgeChoices, rng);
      candidate.learner.fallback = method == Method::kRidge
                                       ? baselines::FallbackPolicy::kGlobal
                                       : baselines::FallbackPolicy::kHammingNearest;
      break;
    case Method::kKnn:
      candidate.learner.kind = baselines::BaseLearnerSpec::Kind::kKnn;
      candidate.learner.knn_neighbors = settings.knn_neighbors;
      candidate.learner.fallback = baselines::FallbackPolicy::kHammingNearest;
      break;
  }
  candidate.network.seed = train_seed;
  if (is_neural(method)) candidate.network.validate();
  return candidate;
}

model::NCoREModel train_network(const Candidate& candidate,
                                std::span<const simcore::Unit> train,
                                std::span<const simcore::Unit> validation,
                                model::TrainResult* result) {
  if (!is_neural(candidate.method)) throw ContractError("train_network: not a neural method");
  if (train.empty()) throw ContractError("train_network: empty training set");
  model::NCoREModel net(candidate.network);
  const std::size_t batch = static_cast<std::size_t>(candidate.network.batch_size);
  std::unique_ptr<model::BatchSource> source;
  if (candidate.method == Method::kNCoREBalanced) {
    const Eigen::Index p = static_cast<Eigen::Index>(train.front().x.size());
    Eigen::MatrixXd data(static_cast<Eigen::Index>(train.size()), p);
    for (std::size_t i = 0; i < train.size(); ++i) {
      for (Eigen::Index c = 0; c < p; ++c) data(static_cast<Eigen::Index>(i), c) = train[i].x[c];
    }
    const int dim = std::min(candidate.balancing_dim, static_cast<int>(p));
    const matching::BalancingProjector projector = matching::BalancingProjector::fit(data, dim);
    source = std::make_unique<matching::BalancedBatchSource>(
        matching::BalancedBatchSource::from_units(
            train, projector, batch, derive_seed(candidate.network.seed, "balanced_batches")));
  } else {
    source = std::make_unique<model::ShuffledBatchSource>(train.size(), batch,
                                                          candidate.network.seed);
  }
  const model::TrainResult trained = model::train(net, train, validation, *source);
  if (result) *result = trained;
  return net;
}

std::unique_ptr<FittedModel> fit_candidate(const Candidate& candidate,
                                           std::span<const simcore::Unit> train,
                                           std::span<const simcore::Unit> validation) {
  if (train.empty()) throw ContractError("fit_candidate: empty training set");
  if (!is_neural(candidate.method)) {
    const int k = train.front().treatments.k();
    auto predictor = std::make_unique<CompositePredictor>(
        baselines::composite_fit(train, k, candidate.learner));
    if (!validation.empty()) {
      predictor->set_validation_rmse(evalstats::factual_rmse(*predictor, validation));
    }
    return predictor;
  }

  model::TrainResult result;
  model::NCoREModel net = train_network(candidate, train, validation, &result);
  return std::make_unique<NCorePredictor>(std::move(net), result.best_validation_rmse);
}

}  // namespace ncore::harness
