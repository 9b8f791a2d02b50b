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
#ifndef NCORE_SIMCORE_SIMULATOR_H_
#define NCORE_SIMCORE_SIMULATOR_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/simcore/types.h"

namespace ncore::simcore {

// Initial viral load bounds (copies/ml, log scale) used for the unscaled
// single-treatment outcome law.
inline constexpr double kOutcomeLowerBound = 0.84;
inline constexpr double kOutcomeUpperBound = 7.69;
inline constexpr double kOutcomeStddev = 0.5;

inline constexpr double kTreatmentCountMean = 2.0;

inline constexpr double kInteractionMean = -0.03;
inline constexpr double kInteractionStddev = 0.015;
inline constexpr double kInteractionGrowth = 1.02;
inline constexpr double kInteractionDensity = 0.2;
inline constexpr int kMaxInteractionDegree = 5;

std::vector<CovariateVector> gen_covariates(const CovariateSchema& schema,
                                            std::size_t n, Rng& rng);

// Weighted Jaccard / mean-absolute distance between two covariate vectors.
// Both weights are the share of the feature type in p; the Jaccard distance
// of two empty indicator sets is 0.
double mixed_distance(std::span<const double> a, std::span<const double> b,
                      const CovariateSchema& schema);

std::vector<std::size_t> select_archetype_indices(std::size_t population_size,
                                                  int k, Rng& rng);
std::vector<CovariateVector> select_archetypes(
    std::span<const CovariateVector> population, int k, Rng& rng);

// softmax(-kappa * d_j); nearer archetypes get larger weights and kappa = 0
// gives the uniform distribution.
std::vector<double> assignment_weights(std::span<const double> distances,
                                       double kappa);

// Draws |T| = min(Poisson(2) + 1, k), then picks that many distinct
// treatments by weighted sampling without replacement.
TreatmentSet assign_treatments(std::span<const double> x,
                               std::span<const CovariateVector> archetypes,
                               double kappa, const CovariateSchema& schema,
                               Rng& rng);

// Gaussian outcome model for one treatment used alone.
struct OutcomeModel {
  CovariateVector centroid;
  std::size_t centroid_index = 0;
  double mean = 0.0;
  double stddev = kOutcomeStddev;
  double lower = kOutcomeLowerBound;
  double upper = kOutcomeUpperBound;

  bool operator==(const OutcomeModel&) const = default;
};

OutcomeModel build_single_outcome_model(
    std::span<const CovariateVector> population, Rng& rng);

// Normal(mean, stddev) conditioned on the open interval (lower, upper),
// sampled by rejection.
double sample_truncated_normal(double mean, double stddev, double lower,
                               double upper, Rng& rng);

double single_outcome(const OutcomeModel& model, std::span<const double> x,
                      const CovariateSchema& schema, Rng& rng);

// Interaction coefficients B_o for every treatment subset with
// 2 <= |o| <= min(k, 5), sorted by mask. Singletons are implicit with
// coefficient 1.
class InteractionCoefficients {
 public:
  InteractionCoefficients() = default;
  explicit InteractionCoefficients(
      std::vector<std::pair<std::uint32_t, double>> entries);

  std::size_t size() const { return entries_.size(); }
  // 0 for subsets that were never sampled.
  double at(std::uint32_t mask) const;
  const std::vector<std::pair<std::uint32_t, double>>& entries() const {
    return entries_;
  }

  bool operator==(const InteractionCoefficients&) const = default;

 private:
  std::vector<std::pair<std::uint32_t, double>> entries_;
};

InteractionCoefficients sample_combo_coefficients(int k, Rng& rng);

// sum_{j in T} y_j + sum_{o subset T, 2 <= |o| <= min(|T|, 5)} B_o prod y_j.
// `singles[j]` is the single-treatment outcome of treatment j.
double combine_outcomes(std::span<const double> singles,
                        const InteractionCoefficients& coefficients,
                        TreatmentSet treatments);

struct SimulationConfig {
  std::size_t n = 1000;
  int k = 4;
  double kappa = 10.0;
  CovariateSchema schema = CovariateSchema::default_hiv();
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const SimulationConfig&) const = default;
};

// Frozen ground truth of one simulated dataset. Answers outcome queries for
// any (unit, treatment set) pair; the unscaled draw for treatment j of unit
// i is keyed by (seed, i, j) so repeated queries agree.
class OutcomeOracle {
 public:
  OutcomeOracle(CovariateSchema schema, std::vector<CovariateVector> archetypes,
                std::vector<OutcomeModel> models,
                InteractionCoefficients coefficients, double kappa,
                std::uint64_t seed);

  int k() const { return static_cast<int>(models_.size()); }
  const CovariateSchema& schema() const { return schema_; }
  const std::vector<CovariateVector>& archetypes() const { return archetypes_; }
  const std::vector<OutcomeModel>& models() const { return models_; }
  const InteractionCoefficients& coefficients() const { return coefficients_; }
  double kappa() const { return kappa_; }
  std::uint64_t seed() const { return seed_; }

  double single_outcome(std::span<const double> x, std::int64_t unit_id,
                        int treatment) const;
  std::vector<double> single_outcomes(std::span<const double> x,
                                      std::int64_t unit_id) const;
  // Throws ContractError for an empty set.
  double combined_outcome(std::span<const double> x, std::int64_t unit_id,
                          TreatmentSet treatments) const;
  // All 2^k - 1 outcomes, entry m - 1 holding mask m.
  std::vector<double> all_outcomes(std::span<const double> x,
                                   std::int64_t unit_id) const;

 private:
  CovariateSchema schema_;
  std::vector<CovariateVector> archetypes_;
  std::vector<OutcomeModel> models_;
  InteractionCoefficients coefficients_;
  double kappa_;
  std::uint64_t seed_;
};

double counterfactual_outcome(const OutcomeOracle& oracle, const Unit& unit,
                              TreatmentSet treatments);

struct SimulationResult {
  Dataset dataset;
  OutcomeOracle oracle;
};

SimulationResult generate_dataset(const SimulationConfig& config);

}  // namespace ncore::simcore

#endif  // NCORE_SIMCORE_SIMULATOR_H_
