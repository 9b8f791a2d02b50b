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
#ifndef NCORE_HARNESS_SPLIT_H_
#define NCORE_HARNESS_SPLIT_H_

#include <array>
#include <cstddef>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/harness/config.h"
#include "ncore/simcore/types.h"

namespace ncore::harness {

inline constexpr std::size_t kMinSplitUnits = 10;

// Positions into Dataset::units, each fold in ascending order.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;

  const std::vector<std::size_t>& fold(int f) const;
  std::vector<std::size_t>& fold(int f);
};

inline constexpr std::array<const char*, 3> kFoldNames = {"train", "validation", "test"};

// Largest-remainder fold sizes for n units. Throws ConfigError when a fold
// would be empty.
std::array<std::size_t, 3> fold_targets(std::size_t n, const SplitRatios& ratios);

// Iterative stratification on the treatment indicators. Labels are processed
// rarest first; each unit carrying the label goes to the fold with the largest
// remaining demand for it, then the largest remaining capacity, then at random.
// Fold sizes equal fold_targets exactly.
Split split_dataset(const simcore::Dataset& dataset, const SplitRatios& ratios, Rng& rng);

std::vector<simcore::Unit> gather(const simcore::Dataset& dataset,
                                  const std::vector<std::size_t>& positions);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_SPLIT_H_
