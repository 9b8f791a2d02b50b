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
#include "ncore/baselines/knn.h"

#include <algorithm>
#include <tuple>
#include <utility>

#include "ncore/common/errors.h"

namespace ncore::baselines {

void KnnGroup::add(const simcore::Unit& unit) {
  ids.push_back(unit.id);
  points.push_back(unit.x);
  outcomes.push_back(unit.outcome);
}

double knn_predict(const KnnGroup& group, std::span<const double> x, int neighbors) {
  if (group.size() == 0) throw ContractError("knn: empty group");
  if (neighbors < 1) throw ContractError("knn: neighbor count must be >= 1");

  // (squared distance, id, row)
  std::vector<std::tuple<double, std::int64_t, std::size_t>> ranked;
  ranked.reserve(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    const std::vector<double>& point = group.points[i];
    if (point.size() != x.size()) throw DimensionError("knn: dimension mismatch");
    double d2 = 0.0;
    for (std::size_t q = 0; q < x.size(); ++q) {
      const double diff = point[q] - x[q];
      d2 += diff * diff;
    }
    ranked.emplace_back(d2, group.ids[i], i);
  }
  const std::size_t take = std::min(group.size(), static_cast<std::size_t>(neighbors));
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(take),
                    ranked.end());
  double total = 0.0;
  for (std::size_t i = 0; i < take; ++i) total += group.outcomes[std::get<2>(ranked[i])];
  return total / static_cast<double>(take);
}

}  // namespace ncore::baselines
