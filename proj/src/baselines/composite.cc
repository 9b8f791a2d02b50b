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
#include "ncore/baselines/composite.h"

#include <bit>
#include <limits>
#include <vector>

#include "ncore/common/errors.h"

namespace ncore::baselines {

CompositeModel::CompositeModel(BaseLearnerSpec spec, int k,
                               std::map<std::uint32_t, SubModel> per_mask,
                               SubModel global)
    : spec_(spec), k_(k), per_mask_(std::move(per_mask)), global_(std::move(global)) {}

std::uint32_t CompositeModel::resolve(std::uint32_t mask) const {
  if (per_mask_.empty()) throw ContractError("composite: model has no sub-models");
  if (per_mask_.count(mask)) return mask;
  if (spec_.fallback == FallbackPolicy::kGlobal) return 0;
  std::uint32_t best = 0;
  int best_distance = std::numeric_limits<int>::max();
  // std::map iterates masks in ascending order, so the first minimum wins.
  for (const auto& [observed, model] : per_mask_) {
    const int distance = std::popcount(observed ^ mask);
    if (distance < best_distance) {
      best_distance = distance;
      best = observed;
    }
  }
  return best;
}

double CompositeModel::evaluate(const SubModel& model, std::span<const double> x) const {
  if (const auto* ridge = std::get_if<RidgeModel>(&model)) return ridge->predict(x);
  return knn_predict(std::get<KnnGroup>(model), x, spec_.knn_neighbors);
}

double CompositeModel::predict(std::span<const double> x,
                               simcore::TreatmentSet treatments) const {
  if (treatments.empty()) throw ContractError("composite: empty treatment set");
  const std::uint32_t target = resolve(treatments.mask());
  if (target == 0) return evaluate(global_, x);
  return evaluate(per_mask_.at(target), x);
}

SubModel fit_sub_model(std::span<const simcore::Unit* const> units,
                       const BaseLearnerSpec& spec) {
  if (units.empty()) throw ContractError("composite: empty group");
  if (spec.kind == BaseLearnerSpec::Kind::kKnn) {
    KnnGroup group;
    for (const simcore::Unit* unit : units) group.add(*unit);
    return group;
  }
  const Eigen::Index p = static_cast<Eigen::Index>(units.front()->x.size());
  Eigen::MatrixXd x(static_cast<Eigen::Index>(units.size()), p);
  std::vector<double> y(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (Eigen::Index q = 0; q < p; ++q) {
      x(static_cast<Eigen::Index>(i), q) = units[i]->x[q];
    }
    y[i] = units[i]->outcome;
  }
  return ridge_fit(x, y, spec.ridge_regularization);
}

CompositeModel composite_fit(std::span<const simcore::Unit> units, int k,
                             const BaseLearnerSpec& spec) {
  if (units.empty()) throw ContractError("composite_fit: empty dataset");
  std::map<std::uint32_t, std::vector<const simcore::Unit*>> groups;
  std::vector<const simcore::Unit*> everyone;
  for (const simcore::Unit& unit : units) {
    groups[unit.treatments.mask()].push_back(&unit);
    everyone.push_back(&unit);
  }
  std::map<std::uint32_t, SubModel> per_mask;
  for (const auto& [mask, members] : groups) {
    per_mask.emplace(mask, fit_sub_model(members, spec));
  }
  return CompositeModel(spec, k, std::move(per_mask), fit_sub_model(everyone, spec));
}

}  // namespace ncore::baselines
