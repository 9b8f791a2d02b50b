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
#ifndef NCORE_BASELINES_KNN_H_
#define NCORE_BASELINES_KNN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "ncore/simcore/types.h"

namespace ncore::baselines {

inline constexpr int kDefaultNeighbors = 5;

// Training points of one kNN group.
struct KnnGroup {
  std::vector<std::int64_t> ids;
  std::vector<std::vector<double>> points;
  std::vector<double> outcomes;

  std::size_t size() const { return ids.size(); }
  void add(const simcore::Unit& unit);
};

// Mean outcome of the `neighbors` closest points by Euclidean distance;
// equal distances are broken by the lower id. Throws ContractError for an
// empty group or neighbors < 1.
double knn_predict(const KnnGroup& group, std::span<const double> x, int neighbors);

}  // namespace ncore::baselines

#endif  // NCORE_BASELINES_KNN_H_
