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
#ifndef NCORE_HARNESS_HPO_H_
#define NCORE_HARNESS_HPO_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncore/evalstats/metrics.h"
#include "ncore/harness/methods.h"

namespace ncore::harness {

struct RunRecord {
  std::string config_hash;
  Method method = Method::kNCoRE;
  std::size_t run_index = 0;
  Hyperparameters hyperparameters;
  // NaN when the run diverged.
  double validation_rmse = 0.0;
  bool diverged = false;
  std::string failure;
  // Filled in only for the selected run, after the search has finished.
  std::optional<evalstats::MetricReport> test;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
};

struct SearchResult {
  std::vector<RunRecord> runs;
  std::size_t best = 0;
  Candidate best_candidate;
  std::unique_ptr<FittedModel> best_model;
};

// Random search over the method's choice lists: `budget` draws, each trained
// on `train` and scored by factual RMSE on `validation`; the lowest score wins
// (earliest run on ties). Draws that repeat an already evaluated point of a
// deterministic method are not refitted. Throws SearchFailure if every run
// diverges.
SearchResult hpo_search(Method method, const TrainingSettings& settings,
                        std::span<const simcore::Unit> train,
                        std::span<const simcore::Unit> validation, int budget,
                        std::uint64_t seed, const std::string& config_hash = "");

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_HPO_H_
