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
#include "ncore/harness/split.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "ncore/common/errors.h"

namespace ncore::harness {

const std::vector<std::size_t>& Split::fold(int f) const {
  return f == 0 ? train : (f == 1 ? validation : test);
}

std::vector<std::size_t>& Split::fold(int f) {
  return f == 0 ? train : (f == 1 ? validation : test);
}

std::array<std::size_t, 3> fold_targets(std::size_t n, const SplitRatios& ratios) {
  ratios.validate();
  const std::array<double, 3> r = {ratios.train, ratios.validation, ratios.test};
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (int f = 0; f < 3; ++f) {
    const double exact = r[f] * static_cast<double>(n);
    sizes[f] = static_cast<std::size_t>(std::floor(exact));
    remainder[f] = exact - static_cast<double>(sizes[f]);
    assigned += sizes[f];
  }
  while (assigned < n) {
    int best = 0;
    for (int f = 1; f < 3; ++f) {
      if (remainder[f] > remainder[best]) best = f;
    }
    ++sizes[best];
    remainder[best] = -1.0;
    ++assigned;
  }
  for (int f = 0; f < 3; ++f) {
    if (sizes[f] == 0) {
      throw ConfigError(std::string("split ratios leave the ") + kFoldNames[f] +
                        " fold empty for " + std::to_string(n) + " units");
    }
  }
  return sizes;
}

Split split_dataset(const simcore::Dataset& dataset, const SplitRatios& ratios, Rng& rng) {
  const std::size_t n = dataset.units.size();
  if (n < kMinSplitUnits) {
    throw ContractError("split_dataset needs at least " + std::to_string(kMinSplitUnits) +
                        " units, got " + std::to_string(n));
  }
  const std::array<std::size_t, 3> targets = fold_targets(n, ratios);
  const std::array<double, 3> r = {ratios.train, ratios.validation, ratios.test};
  const int k = dataset.k;

  std::vector<std::size_t> remaining(k, 0);
  for (const simcore::Unit& unit : dataset.units) {
    for (int j = 0; j < k; ++j) remaining[j] += unit.treatments.contains(j);
  }
  std::vector<std::array<double, 3>> demand(k);
  for (int j = 0; j < k; ++j) {
    for (int f = 0; f < 3; ++f) demand[j][f] = r[f] * static_cast<double>(remaining[j]);
  }
  std::array<std::size_t, 3> capacity = targets;
  std::vector<int> assignment(n, -1);

  auto place = [&](std::size_t u, int label) {
    int chosen = -1;
    std::vector<int> ties;
    for (int f = 0; f < 3; ++f) {
      if (capacity[f] == 0) continue;
      if (chosen < 0) {
        chosen = f;
        ties = {f};
        continue;
      }
      const double df = label >= 0 ? demand[label][f] : 0.0;
      const double dc = label >= 0 ? demand[label][chosen] : 0.0;
      if (df > dc || (df == dc && capacity[f] > capacity[chosen])) {
        chosen = f;
        ties = {f};
      } else if (df == dc && capacity[f] == capacity[chosen]) {
        ties.push_back(f);
      }
    }
    if (ties.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
      chosen = ties[pick(rng)];
    }
    assignment[u] = chosen;
    --capacity[chosen];
    const simcore::TreatmentSet& t = dataset.units[u].treatments;
    for (int j = 0; j < k; ++j) {
      if (!t.contains(j)) continue;
      demand[j][chosen] -= 1.0;
      --remaining[j];
    }
  };

  while (true) {
    int label = -1;
    for (int j = 0; j < k; ++j) {
      if (remaining[j] == 0) continue;
      if (label < 0 || remaining[j] < remaining[label]) label = j;
    }
    if (label < 0) break;
    std::vector<std::size_t> members;
    for (std::size_t u = 0; u < n; ++u) {
      if (assignment[u] < 0 && dataset.units[u].treatments.contains(label)) {
        members.push_back(u);
      }
    }
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t u : members) place(u, label);
  }
  // Units without labels only arise in unvalidated data; fill by capacity.
  for (std::size_t u = 0; u < n; ++u) {
    if (assignment[u] < 0) place(u, -1);
  }

  Split split;
  for (std::size_t u = 0; u < n; ++u) split.fold(assignment[u]).push_back(u);
  return split;
}

std::vector<simcore::Unit> gather(const simcore::Dataset& dataset,
                                  const std::vector<std::size_t>& positions) {
  std::vector<simcore::Unit> out;
  out.reserve(positions.size());
  for (std::size_t i : positions) out.push_back(dataset.units.at(i));
  return out;
}

}  // namespace ncore::harness
