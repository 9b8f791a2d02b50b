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
#include "ncore/diffcore/param_store.h"

#include <cmath>
#include <random>

#include "ncore/common/errors.h"

namespace ncore::diffcore {

ParamId ParamStore::add(std::string name, Matrix initial) {
  if (find(name)) throw ConfigError("duplicate parameter name '" + name + "'");
  Entry entry;
  entry.name = std::move(name);
  entry.grad = Matrix::Zero(initial.rows(), initial.cols());
  entry.value = std::move(initial);
  entries_.push_back(std::move(entry));
  return ParamId{entries_.size() - 1};
}

std::size_t ParamStore::scalar_count() const {
  std::size_t total = 0;
  for (const Entry& entry : entries_) {
    total += static_cast<std::size_t>(entry.value.size());
  }
  return total;
}

std::optional<ParamId> ParamStore::find(std::string_view name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].name == name) return ParamId{i};
  }
  return std::nullopt;
}

Eigen::Ref<Matrix> ParamStore::mutable_grad(ParamId id) {
  Entry& entry = entries_.at(id.index);
  entry.touched = true;
  return entry.grad;
}

void ParamStore::zero_grad() {
  for (Entry& entry : entries_) {
    entry.grad.setZero();
    entry.touched = false;
  }
}

void ParamStore::copy_values_from(const ParamStore& other) {
  if (other.entries_.size() != entries_.size()) {
    throw DimensionError("copy_values_from: parameter layouts differ");
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Matrix& source = other.entries_[i].value;
    if (source.rows() != entries_[i].value.rows() ||
        source.cols() != entries_[i].value.cols()) {
      throw DimensionError("copy_values_from: shape mismatch for '" +
                           entries_[i].name + "'");
    }
    entries_[i].value = source;
  }
}

Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  std::uniform_real_distribution<double> uniform(-limit, limit);
  Matrix out(rows, cols);
  // Row-major fill order so the draw sequence does not depend on storage.
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = uniform(rng);
  }
  return out;
}

}  // namespace ncore::diffcore
