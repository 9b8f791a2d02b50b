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
#include "ncore/evalstats/metrics.h"

#include <algorithm>
#include <cmath>

#include "ncore/common/errors.h"

namespace ncore::evalstats {
namespace {

template <typename Aggregate>
Interval bootstrap(std::span<const double> values, std::size_t n_resamples, Rng& rng,
                   Aggregate aggregate) {
  if (values.empty()) throw ContractError("bootstrap: no values");
  if (n_resamples == 0) throw ConfigError("bootstrap: need at least one resample");
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> stats;
  stats.reserve(n_resamples);
  std::vector<double> sample(values.size());
  for (std::size_t r = 0; r < n_resamples; ++r) {
    for (double& v : sample) v = values[pick(rng)];
    stats.push_back(aggregate(sample));
  }
  std::sort(stats.begin(), stats.end());
  return {percentile(stats, 0.025), percentile(stats, 0.975)};
}

double mean(std::span<const double> values) {
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

}  // namespace

std::vector<double> Predictor::predict_all(std::span<const double> x, int k) const {
  const std::size_t count = simcore::combination_count(k);
  std::vector<double> out(count);
  for (std::size_t m = 1; m <= count; ++m) {
    out[m - 1] = predict(x, simcore::TreatmentSet(static_cast<std::uint32_t>(m), k));
  }
  return out;
}

MetricReport counterfactual_rmse(const Predictor& predictor,
                                 const simcore::OutcomeOracle& oracle,
                                 std::span<const simcore::Unit> units, Rng& rng,
                                 std::size_t n_resamples) {
  if (units.empty()) throw ContractError("counterfactual_rmse: empty test set");
  MetricReport report;
  report.per_unit_errors.reserve(units.size());
  for (const simcore::Unit& unit : units) {
    const std::vector<double> truth = oracle.all_outcomes(unit.x, unit.id);
    const std::vector<double> predicted = predictor.predict_all(unit.x, oracle.k());
    double total = 0.0;
    for (std::size_t m = 0; m < truth.size(); ++m) {
      const double error = truth[m] - predicted[m];
      total += error * error;
    }
    report.per_unit_errors.push_back(total / static_cast<double>(truth.size()));
  }
  report.point = std::sqrt(mean(report.per_unit_errors));
  const Interval ci = bootstrap_ci(report.per_unit_errors, n_resamples, rng);
  report.lower = ci.lower;
  report.upper = ci.upper;
  report.n_resamples = n_resamples;
  return report;
}

double factual_rmse(const Predictor& predictor, std::span<const simcore::Unit> units) {
  if (units.empty()) throw ContractError("factual_rmse: no units");
  double total = 0.0;
  for (const simcore::Unit& unit : units) {
    const double error = predictor.predict(unit.x, unit.treatments) - unit.outcome;
    total += error * error;
  }
  return std::sqrt(total / static_cast<double>(units.size()));
}

double percentile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ContractError("percentile: no values");
  const double position = q * static_cast<double>(sorted.size() - 1);
  const std::size_t below = static_cast<std::size_t>(std::floor(position));
  const std::size_t above = std::min(below + 1, sorted.size() - 1);
  const double fraction = position - static_cast<double>(below);
  return sorted[below] + fraction * (sorted[above] - sorted[below]);
}

Interval bootstrap_ci(std::span<const double> errors, std::size_t n_resamples,
                      Rng& rng) {
  return bootstrap(errors, n_resamples, rng,
                   [](std::span<const double> s) { return std::sqrt(mean(s)); });
}

Interval seed_bootstrap_ci(std::span<const double> values, std::size_t n_resamples,
                           Rng& rng) {
  return bootstrap(values, n_resamples, rng,
                   [](std::span<const double> s) { return mean(s); });
}

}  // namespace ncore::evalstats
