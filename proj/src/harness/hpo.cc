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
#include "ncore/harness/hpo.h"

#include <chrono>
#include <cmath>
#include <limits>

#include "ncore/common/errors.h"

namespace ncore::harness {

SearchResult hpo_search(Method method, const TrainingSettings& settings,
                        std::span<const simcore::Unit> train,
                        std::span<const simcore::Unit> validation, int budget,
                        std::uint64_t seed, const std::string& config_hash) {
  if (budget < 1) throw ConfigError("hpo budget must be at least 1");
  if (train.empty() || validation.empty()) {
    throw ContractError("hpo_search needs non-empty training and validation folds");
  }
  const int k = train.front().treatments.k();
  const int p = static_cast<int>(train.front().x.size());
  Rng rng = derive_rng(seed, "hpo_sample");

  SearchResult result;
  std::vector<Candidate> evaluated;
  double best_score = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int run = 0; run < budget; ++run) {
    const std::uint64_t train_seed =
        derive_seed(seed, "hpo_train", {static_cast<std::uint64_t>(run)});
    const Candidate candidate = sample_candidate(method, settings, k, p, train_seed, rng);
    if (candidate.deterministic()) {
      bool repeat = false;
      for (const Candidate& seen : evaluated) repeat = repeat || seen.same_point(candidate);
      if (repeat) continue;
    }
    evaluated.push_back(candidate);

    RunRecord record;
    record.config_hash = config_hash;
    record.method = method;
    record.run_index = static_cast<std::size_t>(run);
    record.hyperparameters = candidate.describe();
    record.seed = train_seed;
    const auto start = std::chrono::steady_clock::now();
    std::unique_ptr<FittedModel> fitted;
    try {
      fitted = fit_candidate(candidate, train, validation);
      record.validation_rmse = fitted->validation_rmse();
      if (!std::isfinite(record.validation_rmse)) {
        throw TrainingDivergence("non-finite validation RMSE");
      }
    } catch (const TrainingDivergence& e) {
      record.diverged = true;
      record.failure = e.what();
      record.validation_rmse = std::numeric_limits<double>::quiet_NaN();
      fitted.reset();
    }
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (fitted && record.validation_rmse < best_score) {
      best_score = record.validation_rmse;
      result.best = result.runs.size();
      result.best_candidate = candidate;
      result.best_model = std::move(fitted);
      any = true;
    }
    result.runs.push_back(std::move(record));
  }
  if (!any) {
    std::string message = "every hyperparameter run diverged for method " +
                          std::string(method_name(method)) + ":";
    for (const RunRecord& r : result.runs) {
      message += "\n  run " + std::to_string(r.run_index) + ": " + r.failure;
    }
    throw SearchFailure(message);
  }
  return result;
}

}  // namespace ncore::harness
