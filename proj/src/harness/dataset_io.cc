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
#include "ncore/harness/dataset_io.h"

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>

#include <yaml-cpp/yaml.h>

#include "ncore/common/errors.h"
#include "ncore/common/text.h"
#include "yaml_util.h"

namespace ncore::harness {
namespace {

constexpr const char* kSidecarFormat = "ncore-dataset 1";

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string header(std::size_t p, int k) {
  std::string line = "id";
  for (std::size_t i = 0; i < p; ++i) line += ",x_" + std::to_string(i);
  for (int j = 0; j < k; ++j) line += ",t_" + std::to_string(j);
  line += ",y";
  return line;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".schema.yaml");
}

void save_dataset(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                  const std::optional<simcore::SimulationConfig>& provenance) {
  std::ofstream out = open_output(csv);
  out << header(dataset.schema.p, dataset.k) << '\n';
  for (const simcore::Unit& unit : dataset.units) {
    out << unit.id;
    for (double v : unit.x) out << ',' << format_double(v);
    for (int j = 0; j < dataset.k; ++j) out << ',' << (unit.treatments.contains(j) ? 1 : 0);
    out << ',' << format_double(unit.outcome) << '\n';
  }
  finish(out, csv);

  YAML::Node root;
  root["format"] = kSidecarFormat;
  root["k"] = dataset.k;
  root["seed"] = dataset.seed;
  root["rows"] = dataset.units.size();
  root["schema"] = internal::schema_to_yaml(dataset.schema);
  if (provenance) {
    root["simulation"]["n"] = provenance->n;
    root["simulation"]["k"] = provenance->k;
    root["simulation"]["kappa"] = internal::number(provenance->kappa);
    root["simulation"]["seed"] = provenance->seed;
  }
  YAML::Emitter emitter;
  emitter << root;
  const std::filesystem::path side = sidecar_path(csv);
  std::ofstream side_out = open_output(side);
  side_out << emitter.c_str() << '\n';
  finish(side_out, side);
}

LoadedDataset load_dataset(const std::filesystem::path& csv) {
  const std::filesystem::path side = sidecar_path(csv);
  if (!std::filesystem::exists(csv)) throw IoError("dataset file not found: " + csv.string());
  if (!std::filesystem::exists(side)) {
    throw IoError("schema sidecar not found: " + side.string() +
                  " (datasets are never loaded without one)");
  }

  LoadedDataset loaded;
  simcore::Dataset& dataset = loaded.dataset;
  std::size_t expected_rows = 0;
  try {
    const YAML::Node root = YAML::LoadFile(side.string());
    if (!root["format"] || root["format"].as<std::string>() != kSidecarFormat) {
      throw ParseError(side.string(), 1, std::string("expected format '") + kSidecarFormat + "'");
    }
    dataset.k = internal::required<int>(root, "k", side.string());
    dataset.seed = root["seed"] ? root["seed"].as<std::uint64_t>() : 0;
    expected_rows = internal::required<std::size_t>(root, "rows", side.string());
    if (!root["schema"]) throw ParseError(side.string(), 0, "missing key 'schema'");
    dataset.schema = internal::schema_from_yaml(root["schema"], side.string());
    if (const YAML::Node sim = root["simulation"]) {
      simcore::SimulationConfig config;
      config.n = internal::required<std::size_t>(sim, "n", side.string());
      config.k = internal::required<int>(sim, "k", side.string());
      config.kappa = internal::required<double>(sim, "kappa", side.string());
      config.seed = internal::required<std::uint64_t>(sim, "seed", side.string());
      config.schema = dataset.schema;
      loaded.provenance = config;
    }
  } catch (const YAML::Exception& e) {
    throw ParseError(side.string(), static_cast<std::size_t>(e.mark.line + 1), e.msg);
  }
  if (dataset.k < 1 || dataset.k > simcore::kMaxTreatments) {
    throw ValidationError(side.string() + ": k must be in [1, 20]");
  }

  std::ifstream in(csv);
  if (!in) throw IoError("cannot open " + csv.string());
  const std::size_t p = dataset.schema.p;
  const std::string path = csv.string();
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path, 1, "empty file");
  if (trim(line) != header(p, dataset.k)) {
    throw ParseError(path, 1, "header does not match the schema sidecar (expected " +
                                  header(p, dataset.k) + ")");
  }
  const std::size_t columns = 1 + p + static_cast<std::size_t>(dataset.k) + 1;
  std::unordered_map<std::int64_t, std::size_t> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split(trim(line), ',');
    if (fields.size() != columns) {
      throw ParseError(path, line_no, "expected " + std::to_string(columns) +
                                          " fields, found " + std::to_string(fields.size()));
    }
    simcore::Unit unit;
    const std::optional<long long> id = parse_int(trim(fields[0]));
    if (!id) throw ParseError(path, line_no, "bad id '" + std::string(fields[0]) + "'");
    unit.id = *id;
    unit.x.resize(p);
    for (std::size_t i = 0; i < p; ++i) {
      const std::optional<double> v = parse_double(trim(fields[1 + i]));
      if (!v) {
        throw ParseError(path, line_no, "bad value for x_" + std::to_string(i) + ": '" +
                                            std::string(fields[1 + i]) + "'");
      }
      unit.x[i] = *v;
    }
    std::uint32_t mask = 0;
    for (int j = 0; j < dataset.k; ++j) {
      const std::string_view field = trim(fields[1 + p + j]);
      if (field == "1") {
        mask |= 1u << j;
      } else if (field != "0") {
        throw ParseError(path, line_no, "t_" + std::to_string(j) + " must be 0 or 1, got '" +
                                            std::string(field) + "'");
      }
    }
    const std::optional<double> y = parse_double(trim(fields.back()));
    if (!y) throw ParseError(path, line_no, "bad outcome '" + std::string(fields.back()) + "'");
    unit.outcome = *y;
    if (mask == 0) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": unit " +
                            std::to_string(unit.id) + " has no treatment");
    }
    unit.treatments = simcore::TreatmentSet(mask, dataset.k);
    try {
      dataset.schema.check_vector(unit.x);
    } catch (const SchemaError& e) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!seen.emplace(unit.id, line_no).second) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": duplicate id " +
                            std::to_string(unit.id) + " (first on line " +
                            std::to_string(seen[unit.id]) + ")");
    }
    dataset.units.push_back(std::move(unit));
  }
  if (dataset.units.size() != expected_rows) {
    throw ValidationError(path + ": sidecar declares " + std::to_string(expected_rows) +
                          " rows, file has " + std::to_string(dataset.units.size()));
  }
  dataset.validate();
  return loaded;
}

simcore::OutcomeOracle oracle_for(const LoadedDataset& loaded) {
  if (!loaded.provenance) {
    throw ValidationError("dataset has no simulation provenance; counterfactual outcomes "
                          "are unavailable");
  }
  simcore::SimulationResult regenerated = simcore::generate_dataset(*loaded.provenance);
  if (regenerated.dataset.k != loaded.dataset.k ||
      regenerated.dataset.units.size() != loaded.dataset.units.size()) {
    throw ValidationError("dataset does not match its recorded simulation settings");
  }
  return std::move(regenerated.oracle);
}

void export_truth(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                  const simcore::OutcomeOracle& oracle) {
  std::ofstream out = open_output(csv);
  out << "id,mask,y_T\n";
  for (const simcore::Unit& unit : dataset.units) {
    const std::vector<double> all = oracle.all_outcomes(unit.x, unit.id);
    for (std::size_t m = 1; m <= all.size(); ++m) {
      out << unit.id << ',' << m << ',' << format_double(all[m - 1]) << '\n';
    }
  }
  finish(out, csv);
}

void save_split(const std::filesystem::path& csv, const simcore::Dataset& dataset,
                const Split& split) {
  std::vector<int> fold_of(dataset.units.size(), -1);
  for (int f = 0; f < 3; ++f) {
    for (std::size_t i : split.fold(f)) fold_of.at(i) = f;
  }
  std::ofstream out = open_output(csv);
  out << "id,fold\n";
  for (std::size_t i = 0; i < dataset.units.size(); ++i) {
    if (fold_of[i] < 0) throw ContractError("split does not cover every unit");
    out << dataset.units[i].id << ',' << kFoldNames[fold_of[i]] << '\n';
  }
  finish(out, csv);
}

Split load_split(const std::filesystem::path& csv, const simcore::Dataset& dataset) {
  std::ifstream in(csv);
  if (!in) throw IoError("cannot open split file " + csv.string());
  std::unordered_map<std::int64_t, std::size_t> position;
  for (std::size_t i = 0; i < dataset.units.size(); ++i) position[dataset.units[i].id] = i;
  std::vector<int> fold_of(dataset.units.size(), -1);
  const std::string path = csv.string();
  std::string line;
  std::getline(in, line);
  if (trim(line) != "id,fold") throw ParseError(path, 1, "expected header id,fold");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string_view> fields = split(trim(line), ',');
    if (fields.size() != 2) throw ParseError(path, line_no, "expected id,fold");
    const std::optional<long long> id = parse_int(fields[0]);
    if (!id) throw ParseError(path, line_no, "bad id");
    const auto it = position.find(*id);
    if (it == position.end()) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": unknown id " +
                            std::to_string(*id));
    }
    int f = -1;
    for (int c = 0; c < 3; ++c) {
      if (fields[1] == kFoldNames[c]) f = c;
    }
    if (f < 0) throw ParseError(path, line_no, "unknown fold '" + std::string(fields[1]) + "'");
    if (fold_of[it->second] >= 0) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": id listed twice");
    }
    fold_of[it->second] = f;
  }
  Split result;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] < 0) {
      throw ValidationError(path + ": unit " + std::to_string(dataset.units[i].id) +
                            " is in no fold");
    }
    result.fold(fold_of[i]).push_back(i);
  }
  return result;
}

}  // namespace ncore::harness
