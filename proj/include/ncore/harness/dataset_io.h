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
#ifndef NCORE_HARNESS_DATASET_IO_H_
#define NCORE_HARNESS_DATASET_IO_H_

#include <filesystem>
#include <optional>
#include <vector>

#include "ncore/harness/split.h"
#include "ncore/simcore/simulator.h"

namespace ncore::harness {

// A dataset together with the generator settings that produced it, when known.
// Loaded datasets carry provenance only if their sidecar records it.
struct LoadedDataset {
  simcore::Dataset dataset;
  std::optional<simcore::SimulationConfig> provenance;
};

// "<csv path>.schema.yaml".
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

// Writes the CSV (header id,x_0..x_{p-1},t_0..t_{k-1},y) and its sidecar.
void save_dataset(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                  const std::optional<simcore::SimulationConfig>& provenance);

// Throws IoError when either file is missing, ParseError (with the line number)
// on malformed rows, ValidationError on invariant violations.
LoadedDataset load_dataset(const std::filesystem::path& csv);

// Rebuilds the outcome oracle from the recorded generator settings. Throws
// ValidationError if the dataset has no provenance or does not match it.
simcore::OutcomeOracle oracle_for(const LoadedDataset& loaded);

// Rows id,mask,y_T for every unit and every non-empty mask.
void export_truth(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                  const simcore::OutcomeOracle& oracle);

// Rows id,fold with fold in {train, validation, test}.
void save_split(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                const Split& split);
Split load_split(const std::filesystem::path& csv, const simcore::Dataset& dataset);

}  // namespace ncore::harness

#endif  // NCORE_HARNESS_DATASET_IO_H_
