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
#include "ncore/matching/balanced_batch.h"

#include <algorithm>
#include <limits>
#include <set>

#include "ncore/common/errors.h"

namespace ncore::matching {

BalancedPool::BalancedPool(std::vector<PoolUnit> units)
    : units_(std::move(units)), alive_(units_.size(), true), remaining_(units_.size()) {
  for (std::size_t slot = 0; slot < units_.size(); ++slot) {
    buckets_[units_[slot].mask].push_back(slot);
  }
}

std::vector<std::uint32_t> BalancedPool::present_masks() const {
  std::vector<std::uint32_t> out;
  for (const auto& [mask, slots] : buckets_) {
    if (!slots.empty()) out.push_back(mask);
  }
  return out;
}

std::size_t BalancedPool::count(std::uint32_t mask) const {
  auto it = buckets_.find(mask);
  return it == buckets_.end() ? 0 : it->second.size();
}

const PoolUnit& BalancedPool::nth_remaining(std::size_t n) const {
  for (std::size_t slot = 0; slot < units_.size(); ++slot) {
    if (!alive_[slot]) continue;
    if (n == 0) return units_[slot];
    --n;
  }
  throw ContractError("balanced pool: index past remaining units");
}

std::size_t BalancedPool::nearest(std::uint32_t mask, const Eigen::VectorXd& anchor,
                                  NearestSearch search) const {
  std::size_t best = units_.size();
  double best_distance = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t slot) {
    const double distance = (units_[slot].score - anchor).squaredNorm();
    if (best == units_.size() || distance < best_distance ||
        (distance == best_distance && units_[slot].id < units_[best].id)) {
      best = slot;
      best_distance = distance;
    }
  };
  if (search == NearestSearch::kBucketed) {
    for (std::size_t slot : buckets_.at(mask)) consider(slot);
  } else {
    for (std::size_t slot = 0; slot < units_.size(); ++slot) {
      if (alive_[slot] && units_[slot].mask == mask) consider(slot);
    }
  }
  return best;
}

void BalancedPool::remove(std::size_t slot) {
  alive_[slot] = false;
  --remaining_;
  std::vector<std::size_t>& bucket = buckets_.at(units_[slot].mask);
  bucket.erase(std::find(bucket.begin(), bucket.end(), slot));
}

struct BatchBuilder {
  static Batch build(BalancedPool& pool, std::size_t s, Rng& rng, NearestSearch search) {
    if (pool.empty()) throw ContractError("build_balanced_batch: empty pool");
    if (s == 0) throw ContractError("build_balanced_batch: batch size must be >= 1");
    Batch batch;
    std::set<std::uint32_t> represented;
    Eigen::VectorXd centroid;

    auto take = [&](std::size_t slot) {
      const PoolUnit& unit = pool.units_[slot];
      batch.indices.push_back(unit.index);
      batch.ids.push_back(unit.id);
      batch.masks.push_back(unit.mask);
      represented.insert(unit.mask);
      const double count = static_cast<double>(batch.size());
      if (centroid.size() == 0) {
        centroid = unit.score;
      } else {
        centroid += (unit.score - centroid) / count;
      }
      pool.remove(slot);
    };

    std::uniform_int_distribution<std::size_t> seed_pick(0, pool.size() - 1);
    const PoolUnit& seed = pool.nth_remaining(seed_pick(rng));
    take(static_cast<std::size_t>(&seed - pool.units_.data()));

    while (batch.size() < s && !pool.empty()) {
      std::vector<std::uint32_t> candidates;
      for (std::uint32_t mask : pool.present_masks()) {
        if (!represented.count(mask)) candidates.push_back(mask);
      }
      if (candidates.empty()) {
        represented.clear();
        candidates = pool.present_masks();
      }
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const std::uint32_t combo = candidates[pick(rng)];
      take(pool.nearest(combo, centroid, search));
    }
    return batch;
  }
};

Batch build_balanced_batch(BalancedPool& pool, std::size_t s, Rng& rng,
                           NearestSearch search) {
  return BatchBuilder::build(pool, s, rng, search);
}

BalancedBatchSource::BalancedBatchSource(std::vector<PoolUnit> units,
                                         std::size_t batch_size, std::uint64_t seed,
                                         NearestSearch search)
    : units_(std::move(units)), batch_size_(batch_size), seed_(seed), search_(search) {
  if (batch_size_ == 0) throw ConfigError("balanced batches: batch size must be >= 1");
}

BalancedBatchSource BalancedBatchSource::from_units(
    std::span<const simcore::Unit> units, const BalancingProjector& projector,
    std::size_t batch_size, std::uint64_t seed) {
  std::vector<PoolUnit> pool;
  pool.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    pool.push_back({i, units[i].id, units[i].treatments.mask(),
                    projector.project(units[i].x)});
  }
  return BalancedBatchSource(std::move(pool), batch_size, seed);
}

std::vector<std::vector<std::size_t>> BalancedBatchSource::epoch(std::size_t epoch_index) {
  BalancedPool pool(units_);
  Rng rng = derive_rng(seed_, "balanced_batches", {epoch_index});
  std::vector<std::vector<std::size_t>> batches;
  while (!pool.empty()) {
    batches.push_back(build_balanced_batch(pool, batch_size_, rng, search_).indices);
  }
  return batches;
}

}  // namespace ncore::matching
