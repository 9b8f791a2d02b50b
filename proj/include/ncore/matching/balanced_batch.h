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
#ifndef NCORE_MATCHING_BALANCED_BATCH_H_
#define NCORE_MATCHING_BALANCED_BATCH_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ncore/common/rng.h"
#include "ncore/matching/projector.h"
#include "ncore/model/trainer.h"
#include "ncore/simcore/types.h"

namespace ncore::matching {

struct PoolUnit {
  // Position of the unit in the caller's training list.
  std::size_t index = 0;
  std::int64_t id = 0;
  std::uint32_t mask = 0;
  Eigen::VectorXd score;
};

// How the nearest unit of a given combination is located.
enum class NearestSearch {
  // Scan only the bucket of units sharing the combination.
  kBucketed,
  // Scan every remaining unit and filter by combination. Reference path.
  kLinearScan,
};

// Units still available for batch construction, bucketed by treatment mask.
class BalancedPool {
 public:
  explicit BalancedPool(std::vector<PoolUnit> units);

  std::size_t size() const { return remaining_; }
  bool empty() const { return remaining_ == 0; }
  // Masks with at least one remaining unit, ascending.
  std::vector<std::uint32_t> present_masks() const;
  std::size_t count(std::uint32_t mask) const;

 private:
  friend struct BatchBuilder;

  const PoolUnit& nth_remaining(std::size_t n) const;
  std::size_t nearest(std::uint32_t mask, const Eigen::VectorXd& anchor,
                      NearestSearch search) const;
  void remove(std::size_t slot);

  std::vector<PoolUnit> units_;
  std::vector<bool> alive_;
  std::map<std::uint32_t, std::vector<std::size_t>> buckets_;
  std::size_t remaining_ = 0;
};

struct Batch {
  std::vector<std::size_t> indices;
  std::vector<std::int64_t> ids;
  std::vector<std::uint32_t> masks;

  std::size_t size() const { return indices.size(); }
};

// Builds one batch of up to `s` units and removes them from the pool.
//
// A uniformly drawn seed unit starts the batch. Each further step draws a
// combination uniformly from those present in the pool but not yet in the
// batch (the represented set is cleared once every present combination is
// in), then adds the unit of that combination whose score is nearest to the
// running centroid of the batch scores; ties go to the lowest id.
// Throws ContractError for an empty pool or s == 0.
Batch build_balanced_batch(BalancedPool& pool, std::size_t s, Rng& rng,
                           NearestSearch search = NearestSearch::kBucketed);

// Epoch batches drawn with build_balanced_batch from a fresh copy of the
// training pool until it is exhausted.
class BalancedBatchSource : public model::BatchSource {
 public:
  BalancedBatchSource(std::vector<PoolUnit> units, std::size_t batch_size,
                      std::uint64_t seed,
                      NearestSearch search = NearestSearch::kBucketed);

  // Scores training units with `projector`.
  static BalancedBatchSource from_units(std::span<const simcore::Unit> units,
                                        const BalancingProjector& projector,
                                        std::size_t batch_size, std::uint64_t seed);

  std::vector<std::vector<std::size_t>> epoch(std::size_t epoch_index) override;

 private:
  std::vector<PoolUnit> units_;
  std::size_t batch_size_;
  std::uint64_t seed_;
  NearestSearch search_;
};

}  // namespace ncore::matching

#endif  // NCORE_MATCHING_BALANCED_BATCH_H_
