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
#ifndef NCORE_BASELINES_COMPOSITE_H_
#define NCORE_BASELINES_COMPOSITE_H_

#include <cstdint>
#include <map>
#include <span>
#include <variant>

#include "ncore/baselines/knn.h"
#include "ncore/baselines/ridge.h"
#include "ncore/simcore/types.h"

namespace ncore::baselines {

// What to do for a treatment set with no training units of its own.
enum class FallbackPolicy {
  // Sub-model of the observed mask at minimum Hamming distance, lowest mask
  // on ties.
  kHammingNearest,
  // Model fitted on every training unit regardless of treatment.
  kGlobal,
};

struct BaseLearnerSpec {
  enum class Kind { kRidge, kKnn };
  Kind kind = Kind::kRidge;
  double ridge_regularization = 1.0;
  int knn_neighbors = kDefaultNeighbors;
  FallbackPolicy fallback = FallbackPolicy::kHammingNearest;
};

using SubModel = std::variant<RidgeModel, KnnGroup>;

// One regressor per observed treatment combination plus a global model.
class CompositeModel {
 public:
  CompositeModel() = default;
  CompositeModel(BaseLearnerSpec spec, int k, std::map<std::uint32_t, SubModel> per_mask,
                 SubModel global);

  const BaseLearnerSpec& spec() const { return spec_; }
  int k() const { return k_; }
  const std::map<std::uint32_t, SubModel>& sub_models() const { return per_mask_; }
  const SubModel& global_model() const { return global_; }

  // Mask whose sub-model answers queries for `mask` under the fallback
  // policy; 0 means the global model. Throws ContractError when the model
  // holds no sub-models.
  std::uint32_t resolve(std::uint32_t mask) const;

  // Throws ContractError for an empty set or an unfitted model.
  double predict(std::span<const double> x, simcore::TreatmentSet treatments) const;

 private:
  double evaluate(const SubModel& model, std::span<const double> x) const;

  BaseLearnerSpec spec_;
  int k_ = 0;
  std::map<std::uint32_t, SubModel> per_mask_;
  SubModel global_;
};

SubModel fit_sub_model(std::span<const simcore::Unit* const> units,
                       const BaseLearnerSpec& spec);

// Groups units by their exact observed mask and fits one sub-model per
// group and one global model. Throws ContractError for an empty dataset.
CompositeModel composite_fit(std::span<const simcore::Unit> units, int k,
                             const BaseLearnerSpec& spec);

}  // namespace ncore::baselines

#endif  // NCORE_BASELINES_COMPOSITE_H_
