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
#ifndef NCORE_HARNESS_METHODS_H_
#define NCORE_HARNESS_METHODS_H_

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncore/baselines/composite.h"
#include "ncore/common/rng.h"
#include "ncore/evalstats/metrics.h"
#include "ncore/harness/config.h"
#include "ncore/model/ncore_model.h"
#include "ncore/model/trainer.h"

namespace ncore::harness {

// Settings shared by every candidate of a search.
struct TrainingSettings {
  int epochs = 300;
  int patience = 30;
  int balancing_dim = 8;
  int knn_neighbors = 5;

  static TrainingSettings from(const ExperimentConfig& config);
};

using Hyperparameters = std::vector<std::pair<std::string, std::string>>;

// One point of a method's search space.
struct Candidate {
  Method method = Method::kNCoRE;
  model::NCoREConfig network;         // neural methods
  baselines::BaseLearnerSpec learner; // composite methods
  int balancing_dim = 8;              // ncore_balanced only

  Hyperparameters describe() const;
  // True when fitting involves no randomness, so equal candidates give equal fits.
  bool deterministic() const { return !is_neural(method); }
  bool same_point(const Candidate& other) const;
};

// Draws every searched hyperparameter uniformly from its choice list. The
// k-nearest-neighbour composite has no searched hyperparameters.
Candidate sample_candidate(Method method, const TrainingSettings& settings, int k,
                           int p, std::uint64_t train_seed, Rng& rng);

class FittedModel : public evalstats::Predictor {
 public:
  // Validation factual RMSE measured after fitting.
  virtual double validation_rmse() const = 0;
};

// Trains a neural candidate, with balanced batches for ncore_balanced.
model::NCoREModel train_network(const Candidate& candidate,
                                std::span<const simcore::Unit> train,
                                std::span<const simcore::Unit> validation,
                                model::TrainResult* result = nullptr);

// Fits on `train`; neural methods use `validation` for early stopping.
// Throws TrainingDivergence.
std::unique_ptr<FittedModel> fit_candidate(const Candidate& candidate,
                                           std::span<const simcore::Unit> train,
                                           std::span<const simcore::Unit> validation);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_METHODS_H_
