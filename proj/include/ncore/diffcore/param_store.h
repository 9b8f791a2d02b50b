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
#ifndef NCORE_DIFFCORE_PARAM_STORE_H_
#define NCORE_DIFFCORE_PARAM_STORE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "ncore/common/rng.h"

namespace ncore::diffcore {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ParamId {
  std::size_t index = 0;
  bool operator==(const ParamId&) const = default;
};

// Named dense parameters with a gradient slot of identical shape.
//
// Shapes are fixed at add(): mutable access goes through Eigen::Ref, which
// cannot resize. Writing a gradient through mutable_grad() marks the
// parameter as touched for the current step; optimizers skip untouched
// parameters entirely.
class ParamStore {
 public:
  ParamId add(std::string name, Matrix initial);

  std::size_t size() const { return entries_.size(); }
  // Total number of scalars across all parameters.
  std::size_t scalar_count() const;

  const std::string& name(ParamId id) const { return entries_.at(id.index).name; }
  std::optional<ParamId> find(std::string_view name) const;

  const Matrix& value(ParamId id) const { return entries_.at(id.index).value; }
  Eigen::Ref<Matrix> mutable_value(ParamId id) {
    return entries_.at(id.index).value;
  }

  const Matrix& grad(ParamId id) const { return entries_.at(id.index).grad; }
  Eigen::Ref<Matrix> mutable_grad(ParamId id);

  bool touched(ParamId id) const { return entries_.at(id.index).touched; }

  // Zeroes every gradient and clears the touched flags.
  void zero_grad();

  // Copies values (not gradients) from a store with identical layout.
  void copy_values_from(const ParamStore& other);

 private:
  struct Entry {
    std::string name;
    Matrix value;
    Matrix grad;
    bool touched = false;
  };
  std::vector<Entry> entries_;
};

// Uniform(-a, a) with a = sqrt(6 / (fan_in + fan_out)) for a rows x cols
// weight matrix (fan_out = rows, fan_in = cols).
Matrix glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace ncore::diffcore

#endif  // NCORE_DIFFCORE_PARAM_STORE_H_
