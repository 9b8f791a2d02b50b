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
#ifndef NCORE_SIMCORE_TYPES_H_
#define NCORE_SIMCORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ncore::simcore {

// Upper bound on k; 2^k - 1 combinations must stay enumerable.
inline constexpr int kMaxTreatments = 20;

struct ContinuousRange {
  double min = 0.0;
  double max = 1.0;

  bool operator==(const ContinuousRange&) const = default;
};

// Describes which covariates are binary indicators and which are continuous.
// `discrete_rates[i]` belongs to `discrete[i]`, `ranges[i]` to `continuous[i]`.
struct CovariateSchema {
  std::size_t p = 0;
  std::vector<std::size_t> discrete;
  std::vector<std::size_t> continuous;
  std::vector<double> discrete_rates;
  std::vector<ContinuousRange> ranges;

  // Throws SchemaError when the index sets do not partition [0, p), a rate
  // is outside [0, 1] or a range is empty.
  void validate() const;

  // Throws SchemaError unless `x` has length p, discrete entries in {0, 1}
  // and continuous entries inside their ranges.
  void check_vector(std::span<const double> x) const;

  // HIV-flavoured default: 24 binary indicators (risk groups, mutations,
  // prior exposure...) followed by 8 min-max scaled continuous features
  // (age, CD4 count, viral load...). p = 32.
  static CovariateSchema default_hiv();

  bool operator==(const CovariateSchema&) const = default;
};

using CovariateVector = std::vector<double>;

// A subset of the k available treatments, stored as a bitmask where bit j
// set means treatment j is applied.
class TreatmentSet {
 public:
  TreatmentSet() = default;
  // Throws ConfigError if k is outside [1, kMaxTreatments] or `mask` has
  // bits at or above k.
  TreatmentSet(std::uint32_t mask, int k);

  static TreatmentSet full(int k);

  std::uint32_t mask() const { return mask_; }
  int k() const { return k_; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  bool contains(int treatment) const { return (mask_ >> treatment) & 1u; }
  // Members in ascending index order.
  std::vector<int> members() const;

  bool operator==(const TreatmentSet&) const = default;

 private:
  std::uint32_t mask_ = 0;
  int k_ = 0;
};

// Number of non-empty combinations of k treatments, 2^k - 1. Throws
// EnumerationBoundError when k exceeds kMaxTreatments.
std::size_t combination_count(int k);

struct Unit {
  std::int64_t id = 0;
  CovariateVector x;
  TreatmentSet treatments;
  double outcome = 0.0;

  bool operator==(const Unit&) const = default;
};

struct Dataset {
  CovariateSchema schema;
  int k = 0;
  std::vector<Unit> units;
  std::uint64_t seed = 0;

  // Checks schema conformance, non-empty masks and unique ids. Throws
  // ValidationError.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

}  // namespace ncore::simcore

#endif  // NCORE_SIMCORE_TYPES_H_
