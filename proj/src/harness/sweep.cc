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
#include "ncore/harness/sweep.h"

#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"
#include "ncore/evalstats/metrics.h"
#include "ncore/harness/benchmark.h"

namespace ncore::harness {

std::vector<double> default_sweep_values(const std::string& axis) {
  if (axis == "k") return {2, 4, 6, 8};
  if (axis == "n") return {500, 1000, 2000, 4000};
  if (axis == "kappa") return {5, 10, 15, 20};
  throw ConfigError("sweep axis must be k, n or kappa, got '" + axis + "'");
}

ExperimentConfig sweep_cell_config(const ExperimentConfig& base, const std::string& axis,
                                   double value, std::uint64_t seed, Method method) {
  if (!base.dataset.simulate) throw ConfigError("sweeps need a simulated dataset");
  ExperimentConfig cell = base;
  simcore::SimulationConfig& sim = cell.dataset.simulation;
  if (axis == "k" || axis == "n") {
    if (value < 1 || value != std::floor(value)) {
      throw ConfigError("sweep value for " + axis + " must be a positive integer");
    }
  }
  if (axis == "k") {
    sim.k = static_cast<int>(value);
  } else if (axis == "n") {
    sim.n = static_cast<std::size_t>(value);
  } else if (axis == "kappa") {
    sim.kappa = value;
  } else {
    throw ConfigError("sweep axis must be k, n or kappa, got '" + axis + "'");
  }
  sim.seed = seed;
  cell.seed = seed;
  cell.seeds = {seed};
  cell.methods = {method};
  cell.sweep_axis.clear();
  cell.sweep_values.clear();
  cell.workers = 1;
  return cell;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, const std::string& axis,
                                const std::vector<double>& values,
                                const SweepProgress& progress) {
  if (values.size() < 2) throw ConfigError("a sweep needs at least two values");
  struct Cell {
    double value;
    Method method;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (double value : values) {
    for (Method method : base.methods) {
      for (std::uint64_t seed : base.seeds) cells.push_back({value, method, seed});
    }
  }
  // Validate every cell before any work starts.
  for (const Cell& cell : cells) {
    sweep_cell_config(base, axis, cell.value, cell.seed, cell.method).validate();
  }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex collector;
  std::size_t done = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      {
        std::lock_guard<std::mutex> lock(collector);
        if (failure) return;
      }
      try {
        const Cell& cell = cells[i];
        const ExperimentConfig config =
            sweep_cell_config(base, axis, cell.value, cell.seed, cell.method);
        const BenchmarkResult result = run_benchmark(config);
        const evalstats::MetricReport& report = result.methods.front().test;
        std::lock_guard<std::mutex> lock(collector);
        rows[i] = {axis, cell.value, cell.method, cell.seed,
                   report.point, report.lower, report.upper};
        ++done;
        if (progress) progress(done, cells.size());
      } catch (...) {
        std::lock_guard<std::mutex> lock(collector);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::max(1, std::min<int>(base.workers, static_cast<int>(cells.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "axis,value,method,seed,rmse,ci_lo,ci_hi\n";
  for (const SweepRow& row : rows) {
    out << row.axis << ',' << format_double(row.value) << ',' << method_name(row.method)
        << ',' << row.seed << ',' << format_double(row.rmse) << ','
        << format_double(row.ci_lo) << ',' << format_double(row.ci_hi) << '\n';
  }
  return out.str();
}

std::string sweep_seed_summary_csv(const std::vector<SweepRow>& rows,
                                   std::size_t n_resamples, std::uint64_t seed) {
  std::vector<std::pair<double, Method>> order;
  std::map<std::pair<double, Method>, std::vector<double>> groups;
  std::string axis;
  for (const SweepRow& row : rows) {
    axis = row.axis;
    const auto key = std::make_pair(row.value, row.method);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(row.rmse);
  }
  std::ostringstream out;
  out << "axis,value,method,seeds,mean_rmse,ci_lo,ci_hi\n";
  for (std::size_t g = 0; g < order.size(); ++g) {
    const std::vector<double>& values = groups[order[g]];
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    Rng rng = derive_rng(seed, "seed_bootstrap", {static_cast<std::uint64_t>(g)});
    const evalstats::Interval ci = evalstats::seed_bootstrap_ci(values, n_resamples, rng);
    out << axis << ',' << format_double(order[g].first) << ','
        << method_name(order[g].second) << ',' << values.size() << ','
        << format_double(mean) << ',' << format_double(ci.lower) << ','
        << format_double(ci.upper) << '\n';
  }
  return out.str();
}

}  // namespace ncore::harness
