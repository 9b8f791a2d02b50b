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
#ifndef NCORE_DIFFCORE_TAPE_H_
#define NCORE_DIFFCORE_TAPE_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ncore/common/rng.h"
#include "ncore/diffcore/param_store.h"

namespace ncore::diffcore {

enum class ActivationKind { kLinear, kRelu };

std::string_view to_string(ActivationKind kind);
// Throws ConfigError for unknown names.
ActivationKind parse_activation(std::string_view name);

struct NodeId {
  std::size_t index = 0;
};

// Reverse-mode tape over column-batched values.
//
// Every node holds a (width x batch) matrix; column c is sample c. Nodes are
// appended in evaluation order so the tape is topologically sorted by
// construction. The masked variants apply the op only to the listed columns
// and pass the remaining columns through unchanged; this is how a treatment
// arm touches only the samples that received the treatment.
class Tape {
 public:
  explicit Tape(ParamStore& params) : params_(&params) {}

  NodeId input(Matrix value);

  // W * x + b. Throws DimensionError on shape mismatch.
  NodeId affine(ParamId weight, ParamId bias, NodeId x);
  // Affine map on `columns` only (sorted, unique); W must be square.
  NodeId masked_affine(ParamId weight, ParamId bias, NodeId x,
                       std::span<const Eigen::Index> columns);

  NodeId activation(ActivationKind kind, NodeId x);
  NodeId masked_activation(ActivationKind kind, NodeId x,
                           std::span<const Eigen::Index> columns);

  // Inverted dropout. In training mode each entry is zeroed with probability
  // `rate` and survivors are scaled by 1 / (1 - rate); otherwise identity.
  // Throws ConfigError unless 0 <= rate < 1.
  NodeId dropout(NodeId x, double rate, bool training, Rng& rng);

  // Scalar (1 x 1) sum of every entry.
  NodeId sum(NodeId x);
  // Scalar mean of (prediction - target)^2 over every entry.
  NodeId mean_squared_error(NodeId prediction, const Matrix& target);

  const Matrix& value(NodeId id) const;
  // Gradient of the last backward() loss with respect to node `id`.
  const Matrix& grad(NodeId id) const;

  // Accumulates d(loss)/d(param) into the store's gradient slots for every
  // parameter that took part in the forward pass. `loss` must be a scalar
  // node. May be replayed; node gradients are recomputed on each call while
  // parameter gradients keep accumulating until ParamStore::zero_grad().
  // Throws StateError when nothing has been recorded.
  void backward(NodeId loss);

  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }

 private:
  enum class Op { kInput, kAffine, kActivation, kDropout, kSum, kMse };

  struct Node {
    Op op = Op::kInput;
    std::size_t input = 0;
    ParamId weight{};
    ParamId bias{};
    bool masked = false;
    std::vector<Eigen::Index> columns;
    ActivationKind activation = ActivationKind::kLinear;
    Matrix aux;  // dropout mask or regression target
    Matrix value;
    Matrix grad;
  };

  const Node& node(NodeId id) const;
  NodeId push(Node node);
  void check_columns(std::span<const Eigen::Index> columns,
                     Eigen::Index batch) const;

  ParamStore* params_;
  std::vector<Node> nodes_;
};

}  // namespace ncore::diffcore

#endif  // NCORE_DIFFCORE_TAPE_H_
