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
#ifndef NCORE_EVALSTATS_METRICS_H_
#define NCORE_EVALSTATS_METRICS_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/simcore/simulator.h"
#include "ncore/simcore/types.h"

namespace ncore::evalstats {

inline constexpr std::size_t kDefaultBootstrapResamples = 100;

// Anything that predicts an outcome for (covariates, treatment set).
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual double predict(std::span<const double> x,
                         simcore::TreatmentSet treatments) const = 0;
  // Entry m - 1 holds mask m. The default loops over predict().
  virtual std::vector<double> predict_all(std::span<const double> x, int k) const;
};

// Adapts a callable to Predictor.
class FunctionPredictor : public Predictor {
 public:
  using Fn = std::function<double(std::span<const double>, simcore::TreatmentSet)>;
  explicit FunctionPredictor(Fn fn) : fn_(std::move(fn)) {}
  double predict(std::span<const double> x,
                 simcore::TreatmentSet treatments) const override {
    return fn_(x, treatments);
  }

 private:
  Fn fn_;
};

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct MetricReport {
  double point = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t n_resamples = 0;
  // Mean squared error over all masks, one entry per test unit.
  std::vector<double> per_unit_errors;
};

// Root of the mean squared error over every non-empty mask and every unit,
// with a percentile bootstrap over units. Throws ContractError for an empty
// unit list.
MetricReport counterfactual_rmse(const Predictor& predictor,
                                 const simcore::OutcomeOracle& oracle,
                                 std::span<const simcore::Unit> units, Rng& rng,
                                 std::size_t n_resamples = kDefaultBootstrapResamples);

// RMSE of predictions at the observed sets against the observed outcomes.
double factual_rmse(const Predictor& predictor, std::span<const simcore::Unit> units);

// Linear-interpolation percentile (q in [0, 1]) of already sorted values.
double percentile(std::span<const double> sorted, double q);

// Resamples units with replacement, recomputes sqrt(mean(errors)) and
// returns the 2.5 / 97.5 percentiles. `errors` are per-unit squared errors.
Interval bootstrap_ci(std::span<const double> errors, std::size_t n_resamples,
                      Rng& rng);

// Percentile bootstrap of the mean of per-seed metric values.
Interval seed_bootstrap_ci(std::span<const double> values, std::size_t n_resamples,
                           Rng& rng);

}  // namespace ncore::evalstats

#endif  // NCORE_EVALSTATS_METRICS_H_
