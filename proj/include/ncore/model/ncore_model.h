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
#ifndef NCORE_MODEL_NCORE_MODEL_H_
#define NCORE_MODEL_NCORE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/diffcore/checkpoint.h"
#include "ncore/diffcore/optimizer.h"
#include "ncore/diffcore/param_store.h"
#include "ncore/diffcore/tape.h"
#include "ncore/simcore/types.h"

namespace ncore::model {

struct NCoREConfig {
  int k = 2;
  int p = 1;
  int hidden_units = 32;
  int base_layers = 1;
  // Affine sublayers per treatment arm.
  int arm_depth = 1;
  diffcore::ActivationKind activation = diffcore::ActivationKind::kRelu;
  // Apply `activation` after each arm sublayer as well. Off: arms are purely
  // affine, h_T = W_t h_{T \ t} + b_t.
  bool arm_activation = false;
  double dropout = 0.0;
  double l2 = 0.0;
  double learning_rate = 0.003;
  diffcore::OptimizerKind optimizer = diffcore::OptimizerKind::kAdam;
  int batch_size = 32;
  int epochs = 300;
  // Early-stopping patience in epochs on validation factual RMSE; 0 disables.
  int patience = 30;
  // Standardize covariates and outcomes with training-set moments.
  bool standardize = true;
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void validate() const;
  // True when every searchable field lies on the hyperparameter grid.
  bool on_search_grid() const;
};

// Choice lists for random search over the network hyperparameters.
inline constexpr int kHiddenUnitChoices[] = {8, 16, 32, 64};
inline constexpr int kBaseLayerChoices[] = {1, 2, 3};
inline constexpr int kBatchSizeChoices[] = {16, 32, 64, 128};
inline constexpr double kL2Choices[] = {0.0, 1e-5, 1e-4};
inline constexpr double kLearningRateChoices[] = {0.003, 0.03};
inline constexpr double kDropoutChoices[] = {0.0, 0.10, 0.15, 0.25};

// Affine input/output scaling applied around the network.
struct Normalizer {
  std::vector<double> input_mean;
  std::vector<double> input_scale;
  double target_mean = 0.0;
  double target_scale = 1.0;
};

struct Prediction {
  double outcome = 0.0;
  // Representation h_T fed to the output head.
  std::vector<double> hidden;
};

// Shared base layers, one stack of affine interaction sublayers per
// treatment, and a shared affine head.
//
// For a treatment set T the arms of the members of T are applied one after
// another in ascending treatment index, each consuming the previous
// representation. Arms of treatments outside T are never evaluated, so they
// receive no gradient from that sample.
class NCoREModel {
 public:
  // Seeded Glorot-uniform weights, zero biases. Throws ConfigError.
  explicit NCoREModel(NCoREConfig config);

  static NCoREModel from_checkpoint(const diffcore::Checkpoint& checkpoint);
  void save(std::ostream& out) const;

  const NCoREConfig& config() const { return config_; }
  diffcore::ParamStore& params() { return params_; }
  const diffcore::ParamStore& params() const { return params_; }
  Normalizer& normalizer() { return normalizer_; }
  const Normalizer& normalizer() const { return normalizer_; }

  diffcore::ParamId base_weight(int layer) const { return base_[layer].weight; }
  diffcore::ParamId base_bias(int layer) const { return base_[layer].bias; }
  diffcore::ParamId arm_weight(int treatment, int sublayer) const {
    return arms_[treatment][sublayer].weight;
  }
  diffcore::ParamId arm_bias(int treatment, int sublayer) const {
    return arms_[treatment][sublayer].bias;
  }
  diffcore::ParamId head_weight() const { return head_.weight; }
  diffcore::ParamId head_bias() const { return head_.bias; }

  std::size_t parameter_count() const { return params_.scalar_count(); }
  // p*N + N + (L-1)(N*N + N) + k*arm_depth*(N*N + N) + N + 1.
  static std::size_t expected_parameter_count(const NCoREConfig& config);

  // Inference forward pass (dropout off). Throws ContractError for an empty
  // set and DimensionError when x does not have length p.
  Prediction forward(std::span<const double> x,
                     simcore::TreatmentSet treatments) const;

  // Records the batched forward pass on `tape`. `inputs` is p x B in raw
  // covariate units; `masks[c]` is the treatment mask of column c. Returns
  // the 1 x B head output in standardized outcome units.
  diffcore::NodeId forward_graph(diffcore::Tape& tape,
                                 const diffcore::Matrix& inputs,
                                 std::span<const std::uint32_t> masks,
                                 bool training, Rng& rng) const;

  // Predictions for every non-empty mask, entry m - 1 holding mask m.
  // Throws EnumerationBoundError for k > 20.
  std::vector<double> predict_all_combinations(std::span<const double> x) const;

 private:
  struct Layer {
    diffcore::ParamId weight;
    diffcore::ParamId bias;
  };

  NCoREModel(NCoREConfig config, diffcore::ParamStore params);
  void bind_layers();
  std::vector<double> normalized_input(std::span<const double> x) const;
  std::vector<double> base_representation(std::span<const double> x) const;
  void apply_arm(int treatment, std::vector<double>& h,
                 std::vector<double>& scratch) const;
  double head(std::span<const double> h) const;

  NCoREConfig config_;
  diffcore::ParamStore params_;
  Normalizer normalizer_;
  std::vector<Layer> base_;
  std::vector<std::vector<Layer>> arms_;
  Layer head_;
};

}  // namespace ncore::model

#endif  // NCORE_MODEL_NCORE_MODEL_H_
