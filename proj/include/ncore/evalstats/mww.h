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
#ifndef NCORE_EVALSTATS_MWW_H_
#define NCORE_EVALSTATS_MWW_H_

#include <cstddef>
#include <span>

namespace ncore::evalstats {

// Pooled sample size up to which mww_test enumerates the exact null
// distribution.
inline constexpr std::size_t kExactMwwLimit = 12;

struct MwwResult {
  // U statistic of sample a: rank sum of a minus n_a (n_a + 1) / 2, midranks
  // for ties.
  double u = 0.0;
  double p_value = 1.0;
  bool exact = false;
};

double mww_u_statistic(std::span<const double> a, std::span<const double> b);

// Two-sided p from the permutation distribution of U over all C(n, n_a)
// relabelings of the pooled midranks.
double mww_exact_p(std::span<const double> a, std::span<const double> b);

// Two-sided p from the normal approximation with tie-corrected variance and
// a 0.5 continuity correction.
double mww_normal_p(std::span<const double> a, std::span<const double> b);

// Exact when n_a + n_b <= kExactMwwLimit, normal approximation otherwise.
// Throws ContractError if either sample is empty.
MwwResult mww_test(std::span<const double> a, std::span<const double> b);

}  // namespace ncore::evalstats

#endif  // NCORE_EVALSTATS_MWW_H_
