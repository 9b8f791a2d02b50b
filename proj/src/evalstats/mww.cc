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
#include "ncore/evalstats/mww.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ncore/common/errors.h"

namespace ncore::evalstats {
namespace {

// Midranks (1-based) of the pooled sample a ++ b.
std::vector<double> pooled_ranks(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> order(pooled.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(pooled.size());
  std::size_t start = 0;
  while (start < order.size()) {
    std::size_t end = start + 1;
    while (end < order.size() && pooled[order[end]] == pooled[order[start]]) ++end;
    const double midrank = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
    for (std::size_t i = start; i < end; ++i) ranks[order[i]] = midrank;
    start = end;
  }
  return ranks;
}

void require_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ContractError("mww: both samples must be non-empty");
}

double u_from_ranks(std::span<const double> ranks, std::size_t n_a) {
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n_a; ++i) rank_sum += ranks[i];
  const double na = static_cast<double>(n_a);
  return rank_sum - na * (na + 1.0) / 2.0;
}

}  // namespace

double mww_u_statistic(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  return u_from_ranks(pooled_ranks(a, b), a.size());
}

double mww_exact_p(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  const std::vector<double> ranks = pooled_ranks(a, b);
  const std::size_t n = ranks.size();
  const std::size_t n_a = a.size();
  const double na = static_cast<double>(n_a);
  const double center = na * static_cast<double>(b.size()) / 2.0;
  const double observed = std::abs(u_from_ranks(ranks, n_a) - center);

  // Walk all n_a-subsets of positions in lexicographic order.
  std::vector<std::size_t> pick(n_a);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::size_t total = 0;
  std::size_t extreme = 0;
  for (;;) {
    double rank_sum = 0.0;
    for (std::size_t i : pick) rank_sum += ranks[i];
    const double u = rank_sum - na * (na + 1.0) / 2.0;
    ++total;
    if (std::abs(u - center) >= observed - 1e-9) ++extreme;

    std::size_t i = n_a;
    while (i > 0 && pick[i - 1] == n - n_a + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n_a; ++j) pick[j] = pick[j - 1] + 1;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

double mww_normal_p(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  const std::vector<double> ranks = pooled_ranks(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;
  const double u = u_from_ranks(ranks, a.size());

  std::vector<double> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double variance =
      na * nb / 12.0 * ((n + 1.0) - (n > 1.0 ? tie_term / (n * (n - 1.0)) : 0.0));
  if (!(variance > 0.0)) return 1.0;
  const double deviation = std::max(std::abs(u - na * nb / 2.0) - 0.5, 0.0);
  const double z = deviation / std::sqrt(variance);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

MwwResult mww_test(std::span<const double> a, std::span<const double> b) {
  require_samples(a, b);
  MwwResult result;
  result.u = mww_u_statistic(a, b);
  result.exact = a.size() + b.size() <= kExactMwwLimit;
  result.p_value = result.exact ? mww_exact_p(a, b) : mww_normal_p(a, b);
  return result;
}

}  // namespace ncore::evalstats
