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
#ifndef NCORE_MODEL_TRAINER_H_
#define NCORE_MODEL_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/model/ncore_model.h"
#include "ncore/simcore/types.h"

namespace ncore::model {

// Supplies the minibatches of one epoch as index lists into the training
// units. Each epoch must cover every training unit exactly once.
class BatchSource {
 public:
  virtual ~BatchSource() = default;
  virtual std::vector<std::vector<std::size_t>> epoch(std::size_t epoch_index) = 0;
};

// Uniform reshuffle per epoch, cut into consecutive batches.
class ShuffledBatchSource : public BatchSource {
 public:
  ShuffledBatchSource(std::size_t unit_count, std::size_t batch_size,
                      std::uint64_t seed);
  std::vector<std::vector<std::size_t>> epoch(std::size_t epoch_index) override;

 private:
  std::size_t unit_count_;
  std::size_t batch_size_;
  std::uint64_t seed_;
};

struct TrainResult {
  // Mean minibatch MSE per epoch, in outcome units.
  std::vector<double> loss_trace;
  // Validation factual RMSE per epoch; empty without a validation set.
  std::vector<double> validation_trace;
  // Epoch (0-based) whose parameters the model holds on return.
  std::size_t best_epoch = 0;
  double best_validation_rmse = 0.0;
};

// Fits the normalizer (when config.standardize) and minimizes factual MSE
// with the configured optimizer. With a non-empty validation set and
// patience > 0, stops after `patience` epochs without improvement and
// restores the best parameters. Throws TrainingDivergence on a non-finite
// loss and ContractError for an empty training set.
TrainResult train(NCoREModel& model, std::span<const simcore::Unit> train_units,
                  std::span<const simcore::Unit> validation_units,
                  BatchSource& batches);

double factual_rmse(const NCoREModel& model, std::span<const simcore::Unit> units);

}  // namespace ncore::model

#endif  // NCORE_MODEL_TRAINER_H_
