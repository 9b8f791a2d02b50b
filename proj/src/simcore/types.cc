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
#include "ncore/simcore/types.h"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "ncore/common/errors.h"

namespace ncore::simcore {

void CovariateSchema::validate() const {
  if (discrete.size() != discrete_rates.size()) {
    throw SchemaError("schema: one Bernoulli rate required per discrete feature");
  }
  if (continuous.size() != ranges.size()) {
    throw SchemaError("schema: one range required per continuous feature");
  }
  if (discrete.size() + continuous.size() != p) {
    throw SchemaError("schema: discrete and continuous index sets must cover p = " +
                      std::to_string(p) + " features");
  }
  std::vector<bool> seen(p, false);
  auto mark = [&](std::size_t index) {
    if (index >= p) {
      throw SchemaError("schema: feature index " + std::to_string(index) +
                        " out of range");
    }
    if (seen[index]) {
      throw SchemaError("schema: feature index " + std::to_string(index) +
                        " listed twice");
    }
    seen[index] = true;
  };
  for (std::size_t index : discrete) mark(index);
  for (std::size_t index : continuous) mark(index);
  for (double rate : discrete_rates) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
      throw SchemaError("schema: Bernoulli rate outside [0, 1]");
    }
  }
  for (const ContinuousRange& range : ranges) {
    if (!(range.min < range.max)) {
      throw SchemaError("schema: continuous range requires min < max");
    }
  }
}

void CovariateSchema::check_vector(std::span<const double> x) const {
  if (x.size() != p) {
    throw SchemaError("covariate vector has length " + std::to_string(x.size()) +
                      ", schema expects " + std::to_string(p));
  }
  for (std::size_t index : discrete) {
    if (x[index] != 0.0 && x[index] != 1.0) {
      throw SchemaError("discrete covariate " + std::to_string(index) +
                        " is not 0/1");
    }
  }
  for (std::size_t i = 0; i < continuous.size(); ++i) {
    const double value = x[continuous[i]];
    if (!(value >= ranges[i].min && value <= ranges[i].max)) {
      throw SchemaError("continuous covariate " + std::to_string(continuous[i]) +
                        " outside its range");
    }
  }
}

CovariateSchema CovariateSchema::default_hiv() {
  CovariateSchema schema;
  schema.p = 32;
  for (std::size_t i = 0; i < 24; ++i) {
    schema.discrete.push_back(i);
    // Prevalences between 10% and 60%.
    schema.discrete_rates.push_back(static_cast<double>(1 + i % 6) / 10.0);
  }
  for (std::size_t i = 24; i < 32; ++i) {
    schema.continuous.push_back(i);
    schema.ranges.push_back({0.0, 1.0});
  }
  return schema;
}

TreatmentSet::TreatmentSet(std::uint32_t mask, int k) : mask_(mask), k_(k) {
  if (k < 1 || k > kMaxTreatments) {
    throw ConfigError("treatment count k must be in [1, " +
                      std::to_string(kMaxTreatments) + "], got " +
                      std::to_string(k));
  }
  if ((mask >> k) != 0) {
    throw ConfigError("treatment mask " + std::to_string(mask) +
                      " has bits beyond k = " + std::to_string(k));
  }
}

TreatmentSet TreatmentSet::full(int k) {
  if (k < 1 || k > kMaxTreatments) {
    throw ConfigError("treatment count k must be in [1, 20]");
  }
  return TreatmentSet((1u << k) - 1u, k);
}

int TreatmentSet::size() const { return std::popcount(mask_); }

std::vector<int> TreatmentSet::members() const {
  std::vector<int> out;
  for (int j = 0; j < k_; ++j) {
    if (contains(j)) out.push_back(j);
  }
  return out;
}

std::size_t combination_count(int k) {
  if (k < 1) throw ConfigError("k must be at least 1");
  if (k > kMaxTreatments) {
    throw EnumerationBoundError("cannot enumerate 2^" + std::to_string(k) +
                                " - 1 combinations (k <= 20)");
  }
  return (std::size_t{1} << k) - 1;
}

void Dataset::validate() const {
  try {
    schema.validate();
  } catch (const SchemaError& e) {
    throw ValidationError(e.what());
  }
  if (k < 1 || k > kMaxTreatments) {
    throw ValidationError("dataset k must be in [1, 20]");
  }
  std::unordered_set<std::int64_t> ids;
  for (const Unit& unit : units) {
    if (!ids.insert(unit.id).second) {
      throw ValidationError("duplicate unit id " + std::to_string(unit.id));
    }
    if (unit.treatments.empty()) {
      throw ValidationError("unit " + std::to_string(unit.id) +
                            " has an empty treatment set");
    }
    if (unit.treatments.k() != k) {
      throw ValidationError("unit " + std::to_string(unit.id) +
                            " treatment set has wrong k");
    }
    try {
      schema.check_vector(unit.x);
    } catch (const SchemaError& e) {
      throw ValidationError("unit " + std::to_string(unit.id) + ": " + e.what());
    }
  }
}

}  // namespace ncore::simcore
