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
#ifndef NCORE_HARNESS_SWEEP_H_
#define NCORE_HARNESS_SWEEP_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncore/harness/config.h"

namespace ncore::harness {

struct SweepRow {
  std::string axis;
  double value = 0.0;
  Method method = Method::kNCoRE;
  std::uint64_t seed = 0;
  double rmse = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

// k: {2, 4, 6, 8}; n: {500, 1000, 2000, 4000}; kappa: {5, 10, 15, 20}.
std::vector<double> default_sweep_values(const std::string& axis);

// The benchmark configuration of one sweep cell: the axis value replaces the
// simulation setting and the replicate seed drives both the simulated data
// and the benchmark.
ExperimentConfig sweep_cell_config(const ExperimentConfig& base, const std::string& axis,
                                   double value, std::uint64_t seed, Method method);

// Called after each finished cell with (done, total).
using SweepProgress = std::function<void(std::size_t, std::size_t)>;

// One benchmark per (value, method, seed) on base.workers threads. Rows come
// back ordered by value, then method, then seed regardless of scheduling.
std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                const std::vector<double>& values,
                                const SweepProgress& progress = {});

// Long format: axis,value,method,seed,rmse,ci_lo,ci_hi.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Per (value, method): mean RMSE over seeds with a bootstrap interval over
// seeds. Columns axis,value,method,seeds,mean_rmse,ci_lo,ci_hi.
std::string sweep_seed_summary_csv(const std::vector<SweepRow>& rows,
                                   std::size_t n_resamples, std::uint64_t seed);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_SWEEP_H_
