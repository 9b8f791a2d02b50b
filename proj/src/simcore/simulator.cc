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
#include "ncore/simcore/simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "ncore/common/errors.h"

namespace ncore::simcore {

std::vector<CovariateVector> gen_covariates(const CovariateSchema& schema,
                                            std::size_t n, Rng& rng) {
  schema.validate();
  if (n == 0) throw ConfigError("gen_covariates: n must be at least 1");

  // Per-feature lookup so covariates are drawn in index order.
  std::vector<int> slot(schema.p, -1);
  std::vector<bool> is_discrete(schema.p, false);
  for (std::size_t i = 0; i < schema.discrete.size(); ++i) {
    slot[schema.discrete[i]] = static_cast<int>(i);
    is_discrete[schema.discrete[i]] = true;
  }
  for (std::size_t i = 0; i < schema.continuous.size(); ++i) {
    slot[schema.continuous[i]] = static_cast<int>(i);
  }

  std::uniform_real_distribution<double> unit_uniform(0.0, 1.0);
  std::vector<CovariateVector> out(n, CovariateVector(schema.p));
  for (CovariateVector& x : out) {
    for (std::size_t q = 0; q < schema.p; ++q) {
      const double u = unit_uniform(rng);
      if (is_discrete[q]) {
        x[q] = u < schema.discrete_rates[slot[q]] ? 1.0 : 0.0;
      } else {
        const ContinuousRange& range = schema.ranges[slot[q]];
        x[q] = range.min + u * (range.max - range.min);
      }
    }
  }
  return out;
}

double mixed_distance(std::span<const double> a, std::span<const double> b,
                      const CovariateSchema& schema) {
  if (a.size() != schema.p || b.size() != schema.p) {
    throw DimensionError("mixed_distance: vectors must have length p = " +
                         std::to_string(schema.p));
  }
  const double p = static_cast<double>(schema.p);
  double distance = 0.0;
  if (!schema.discrete.empty()) {
    std::size_t intersection = 0;
    std::size_t set_union = 0;
    for (std::size_t index : schema.discrete) {
      const bool in_a = a[index] != 0.0;
      const bool in_b = b[index] != 0.0;
      intersection += (in_a && in_b) ? 1 : 0;
      set_union += (in_a || in_b) ? 1 : 0;
    }
    const double jaccard =
        set_union == 0 ? 0.0
                       : 1.0 - static_cast<double>(intersection) /
                                   static_cast<double>(set_union);
    distance += static_cast<double>(schema.discrete.size()) / p * jaccard;
  }
  if (!schema.continuous.empty()) {
    double total = 0.0;
    for (std::size_t index : schema.continuous) {
      total += std::abs(a[index] - b[index]);
    }
    const double count = static_cast<double>(schema.continuous.size());
    distance += count / p * (total / count);
  }
  return distance;
}

std::vector<std::size_t> select_archetype_indices(std::size_t population_size,
                                                  int k, Rng& rng) {
  if (k <= 0) throw ConfigError("select_archetypes: k must be at least 1");
  if (population_size == 0) {
    throw ConfigError("select_archetypes: population is empty");
  }
  std::uniform_int_distribution<std::size_t> pick(0, population_size - 1);
  std::vector<std::size_t> indices(static_cast<std::size_t>(k));
  for (std::size_t& index : indices) index = pick(rng);
  return indices;
}

std::vector<CovariateVector> select_archetypes(
    std::span<const CovariateVector> population, int k, Rng& rng) {
  std::vector<CovariateVector> out;
  for (std::size_t index : select_archetype_indices(population.size(), k, rng)) {
    out.push_back(population[index]);
  }
  return out;
}

std::vector<double> assignment_weights(std::span<const double> distances,
                                       double kappa) {
  if (!(kappa >= 0.0)) throw ConfigError("kappa must be non-negative");
  if (distances.empty()) return {};
  std::vector<double> logits(distances.size());
  for (std::size_t j = 0; j < distances.size(); ++j) {
    logits[j] = -kappa * distances[j];
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& logit : logits) {
    logit = std::exp(logit - top);
    total += logit;
  }
  for (double& weight : logits) weight /= total;
  return logits;
}

TreatmentSet assign_treatments(std::span<const double> x,
                               std::span<const CovariateVector> archetypes,
                               double kappa, const CovariateSchema& schema,
                               Rng& rng) {
  const int k = static_cast<int>(archetypes.size());
  if (k < 1 || k > kMaxTreatments) {
    throw ConfigError("assign_treatments: need between 1 and 20 archetypes");
  }
  std::vector<double> distances(archetypes.size());
  for (std::size_t j = 0; j < archetypes.size(); ++j) {
    distances[j] = mixed_distance(x, archetypes[j], schema);
  }
  std::vector<double> weights = assignment_weights(distances, kappa);

  std::poisson_distribution<int> poisson(kTreatmentCountMean);
  const int count = std::min(poisson(rng) + 1, k);

  std::uniform_real_distribution<double> unit_uniform(0.0, 1.0);
  std::uint32_t mask = 0;
  for (int draw = 0; draw < count; ++draw) {
    double remaining = 0.0;
    int last_available = -1;
    for (int j = 0; j < k; ++j) {
      if (!((mask >> j) & 1u)) {
        remaining += weights[j];
        last_available = j;
      }
    }
    int chosen = last_available;
    if (remaining > 0.0) {
      double target = unit_uniform(rng) * remaining;
      for (int j = 0; j < k; ++j) {
        if ((mask >> j) & 1u) continue;
        target -= weights[j];
        if (target < 0.0) {
          chosen = j;
          break;
        }
      }
    } else {
      // Every remaining weight underflowed; fall back to a uniform pick.
      std::vector<int> available;
      for (int j = 0; j < k; ++j) {
        if (!((mask >> j) & 1u)) available.push_back(j);
      }
      std::uniform_int_distribution<std::size_t> pick(0, available.size() - 1);
      chosen = available[pick(rng)];
    }
    mask |= 1u << chosen;
  }
  return TreatmentSet(mask, k);
}

OutcomeModel build_single_outcome_model(
    std::span<const CovariateVector> population, Rng& rng) {
  if (population.empty()) {
    throw ConfigError("build_single_outcome_model: population is empty");
  }
  std::uniform_int_distribution<std::size_t> pick(0, population.size() - 1);
  std::uniform_real_distribution<double> mean(kOutcomeLowerBound,
                                              kOutcomeUpperBound);
  OutcomeModel model;
  model.centroid_index = pick(rng);
  model.centroid = population[model.centroid_index];
  model.mean = mean(rng);
  return model;
}

double sample_truncated_normal(double mean, double stddev, double lower,
                               double upper, Rng& rng) {
  std::normal_distribution<double> normal(mean, stddev);
  for (;;) {
    const double value = normal(rng);
    if (value > lower && value < upper) return value;
  }
}

double single_outcome(const OutcomeModel& model, std::span<const double> x,
                      const CovariateSchema& schema, Rng& rng) {
  const double unscaled = sample_truncated_normal(model.mean, model.stddev,
                                                  model.lower, model.upper, rng);
  return unscaled * mixed_distance(x, model.centroid, schema);
}

InteractionCoefficients::InteractionCoefficients(
    std::vector<std::pair<std::uint32_t, double>> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

double InteractionCoefficients::at(std::uint32_t mask) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), mask,
      [](const auto& entry, std::uint32_t key) { return entry.first < key; });
  if (it == entries_.end() || it->first != mask) return 0.0;
  return it->second;
}

InteractionCoefficients sample_combo_coefficients(int k, Rng& rng) {
  if (k < 1) throw ConfigError("sample_combo_coefficients: k must be >= 1");
  if (k > kMaxTreatments) {
    throw EnumerationBoundError("sample_combo_coefficients: k must be <= 20");
  }
  const int max_degree = std::min(k, kMaxInteractionDegree);
  std::uniform_real_distribution<double> unit_uniform(0.0, 1.0);
  std::vector<std::pair<std::uint32_t, double>> entries;
  const std::uint32_t limit = 1u << k;
  for (std::uint32_t mask = 1; mask < limit; ++mask) {
    const int degree = std::popcount(mask);
    if (degree < 2 || degree > max_degree) continue;
    const bool active = unit_uniform(rng) < kInteractionDensity;
    std::normal_distribution<double> law(
        std::pow(kInteractionGrowth, degree - 1) * kInteractionMean,
        std::pow(kInteractionGrowth, degree - 2) * kInteractionStddev);
    const double value = law(rng);
    entries.emplace_back(mask, active ? value : 0.0);
  }
  return InteractionCoefficients(std::move(entries));
}

double combine_outcomes(std::span<const double> singles,
                        const InteractionCoefficients& coefficients,
                        TreatmentSet treatments) {
  if (treatments.empty()) {
    throw ContractError("combined outcome requires a non-empty treatment set");
  }
  const std::uint32_t mask = treatments.mask();
  double total = 0.0;
  for (int j = 0; j < treatments.k(); ++j) {
    if (treatments.contains(j)) total += singles[j];
  }
  const int max_degree = std::min(treatments.size(), kMaxInteractionDegree);
  if (max_degree < 2) return total;
  // Submasks of T in descending order; only multi-treatment subsets carry a
  // stored coefficient.
  for (std::uint32_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
    const int degree = std::popcount(sub);
    if (degree < 2 || degree > max_degree) continue;
    const double coefficient = coefficients.at(sub);
    if (coefficient == 0.0) continue;
    double product = 1.0;
    for (std::uint32_t bits = sub; bits != 0; bits &= bits - 1) {
      product *= singles[std::countr_zero(bits)];
    }
    total += coefficient * product;
  }
  return total;
}

void SimulationConfig::validate() const {
  if (n < 1) throw ConfigError("simulation: n must be at least 1");
  if (k < 1 || k > kMaxTreatments) {
    throw ConfigError("simulation: k must be in [1, 20], got " +
                      std::to_string(k));
  }
  if (!(kappa >= 0.0)) throw ConfigError("simulation: kappa must be >= 0");
  schema.validate();
}

OutcomeOracle::OutcomeOracle(CovariateSchema schema,
                             std::vector<CovariateVector> archetypes,
                             std::vector<OutcomeModel> models,
                             InteractionCoefficients coefficients, double kappa,
                             std::uint64_t seed)
    : schema_(std::move(schema)),
      archetypes_(std::move(archetypes)),
      models_(std::move(models)),
      coefficients_(std::move(coefficients)),
      kappa_(kappa),
      seed_(seed) {
  if (models_.empty() || models_.size() > kMaxTreatments) {
    throw ConfigError("oracle: need between 1 and 20 outcome models");
  }
  if (archetypes_.size() != models_.size()) {
    throw ConfigError("oracle: one archetype per treatment required");
  }
}

double OutcomeOracle::single_outcome(std::span<const double> x,
                                     std::int64_t unit_id, int treatment) const {
  if (treatment < 0 || treatment >= k()) {
    throw ContractError("oracle: treatment index out of range");
  }
  Rng rng = derive_rng(seed_, "single_outcome",
                       {static_cast<std::uint64_t>(unit_id),
                        static_cast<std::uint64_t>(treatment)});
  return simcore::single_outcome(models_[treatment], x, schema_, rng);
}

std::vector<double> OutcomeOracle::single_outcomes(std::span<const double> x,
                                                   std::int64_t unit_id) const {
  std::vector<double> out(models_.size());
  for (int j = 0; j < k(); ++j) out[j] = single_outcome(x, unit_id, j);
  return out;
}

double OutcomeOracle::combined_outcome(std::span<const double> x,
                                       std::int64_t unit_id,
                                       TreatmentSet treatments) const {
  if (treatments.empty()) {
    throw ContractError("oracle: counterfactual query needs a non-empty set");
  }
  if (treatments.k() != k()) {
    throw ContractError("oracle: treatment set built for a different k");
  }
  std::vector<double> singles(models_.size(), 0.0);
  for (int j : treatments.members()) singles[j] = single_outcome(x, unit_id, j);
  return combine_outcomes(singles, coefficients_, treatments);
}

std::vector<double> OutcomeOracle::all_outcomes(std::span<const double> x,
                                                std::int64_t unit_id) const {
  const std::size_t count = combination_count(k());
  const std::vector<double> singles = single_outcomes(x, unit_id);
  std::vector<double> out(count);
  for (std::size_t m = 1; m <= count; ++m) {
    out[m - 1] = combine_outcomes(
        singles, coefficients_, TreatmentSet(static_cast<std::uint32_t>(m), k()));
  }
  return out;
}

double counterfactual_outcome(const OutcomeOracle& oracle, const Unit& unit,
                              TreatmentSet treatments) {
  return oracle.combined_outcome(unit.x, unit.id, treatments);
}

SimulationResult generate_dataset(const SimulationConfig& config) {
  config.validate();

  Rng covariate_rng = derive_rng(config.seed, "covariates");
  std::vector<CovariateVector> population =
      gen_covariates(config.schema, config.n, covariate_rng);

  Rng archetype_rng = derive_rng(config.seed, "archetypes");
  std::vector<CovariateVector> archetypes =
      select_archetypes(population, config.k, archetype_rng);

  Rng model_rng = derive_rng(config.seed, "outcome_models");
  std::vector<OutcomeModel> models;
  for (int j = 0; j < config.k; ++j) {
    models.push_back(build_single_outcome_model(population, model_rng));
  }

  Rng coefficient_rng = derive_rng(config.seed, "interactions");
  InteractionCoefficients coefficients =
      sample_combo_coefficients(config.k, coefficient_rng);

  OutcomeOracle oracle(config.schema, archetypes, std::move(models),
                       std::move(coefficients), config.kappa, config.seed);

  Dataset dataset;
  dataset.schema = config.schema;
  dataset.k = config.k;
  dataset.seed = config.seed;
  dataset.units.reserve(config.n);
  Rng assignment_rng = derive_rng(config.seed, "assignment");
  for (std::size_t i = 0; i < config.n; ++i) {
    Unit unit;
    unit.id = static_cast<std::int64_t>(i);
    unit.x = std::move(population[i]);
    unit.treatments = assign_treatments(unit.x, archetypes, config.kappa,
                                        config.schema, assignment_rng);
    unit.outcome = oracle.combined_outcome(unit.x, unit.id, unit.treatments);
    dataset.units.push_back(std::move(unit));
  }
  return {std::move(dataset), std::move(oracle)};
}

}  // namespace ncore::simcore
