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
#include "ncore/diffcore/tape.h"

#include <random>
#include <string>

#include "ncore/common/errors.h"

namespace ncore::diffcore {
namespace {

Matrix apply_activation(ActivationKind kind, const Matrix& x) {
  switch (kind) {
    case ActivationKind::kLinear:
      return x;
    case ActivationKind::kRelu:
      return x.cwiseMax(0.0);
  }
  return x;
}

Matrix activation_derivative(ActivationKind kind, const Matrix& x) {
  switch (kind) {
    case ActivationKind::kLinear:
      return Matrix::Ones(x.rows(), x.cols());
    case ActivationKind::kRelu:
      return (x.array() > 0.0).cast<double>().matrix();
  }
  return Matrix::Ones(x.rows(), x.cols());
}

}  // namespace

std::string_view to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::kLinear:
      return "linear";
    case ActivationKind::kRelu:
      return "relu";
  }
  return "unknown";
}

ActivationKind parse_activation(std::string_view name) {
  if (name == "linear") return ActivationKind::kLinear;
  if (name == "relu") return ActivationKind::kRelu;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

const Tape::Node& Tape::node(NodeId id) const {
  if (id.index >= nodes_.size()) throw StateError("tape: unknown node id");
  return nodes_[id.index];
}

NodeId Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return NodeId{nodes_.size() - 1};
}

void Tape::check_columns(std::span<const Eigen::Index> columns,
                         Eigen::Index batch) const {
  Eigen::Index previous = -1;
  for (Eigen::Index c : columns) {
    if (c <= previous || c >= batch) {
      throw DimensionError("tape: masked columns must be sorted, unique and "
                           "inside the batch");
    }
    previous = c;
  }
}

NodeId Tape::input(Matrix value) {
  Node n;
  n.op = Op::kInput;
  n.value = std::move(value);
  return push(std::move(n));
}

NodeId Tape::affine(ParamId weight, ParamId bias, NodeId x) {
  const Matrix& w = params_->value(weight);
  const Matrix& b = params_->value(bias);
  const Matrix& in = node(x).value;
  if (w.cols() != in.rows() || b.rows() != w.rows() || b.cols() != 1) {
    throw DimensionError("affine: W is " + std::to_string(w.rows()) + "x" +
                         std::to_string(w.cols()) + ", input has " +
                         std::to_string(in.rows()) + " rows");
  }
  Node n;
  n.op = Op::kAffine;
  n.input = x.index;
  n.weight = weight;
  n.bias = bias;
  n.value = w * in;
  n.value.colwise() += b.col(0);
  return push(std::move(n));
}

NodeId Tape::masked_affine(ParamId weight, ParamId bias, NodeId x,
                           std::span<const Eigen::Index> columns) {
  const Matrix& w = params_->value(weight);
  const Matrix& b = params_->value(bias);
  const Matrix& in = node(x).value;
  if (w.rows() != w.cols() || w.cols() != in.rows() || b.rows() != w.rows() ||
      b.cols() != 1) {
    throw DimensionError("masked_affine: W must be square and match the input");
  }
  check_columns(columns, in.cols());
  Node n;
  n.op = Op::kAffine;
  n.input = x.index;
  n.weight = weight;
  n.bias = bias;
  n.masked = true;
  n.columns.assign(columns.begin(), columns.end());
  n.value = in;
  if (!n.columns.empty()) {
    Matrix active = w * in(Eigen::all, n.columns);
    active.colwise() += b.col(0);
    n.value(Eigen::all, n.columns) = active;
  }
  return push(std::move(n));
}

NodeId Tape::activation(ActivationKind kind, NodeId x) {
  Node n;
  n.op = Op::kActivation;
  n.input = x.index;
  n.activation = kind;
  n.value = apply_activation(kind, node(x).value);
  return push(std::move(n));
}

NodeId Tape::masked_activation(ActivationKind kind, NodeId x,
                               std::span<const Eigen::Index> columns) {
  const Matrix& in = node(x).value;
  check_columns(columns, in.cols());
  Node n;
  n.op = Op::kActivation;
  n.input = x.index;
  n.activation = kind;
  n.masked = true;
  n.columns.assign(columns.begin(), columns.end());
  n.value = in;
  if (!n.columns.empty()) {
    n.value(Eigen::all, n.columns) =
        apply_activation(kind, in(Eigen::all, n.columns));
  }
  return push(std::move(n));
}

NodeId Tape::dropout(NodeId x, double rate, bool training, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw ConfigError("dropout rate must be in [0, 1), got " +
                      std::to_string(rate));
  }
  const Matrix& in = node(x).value;
  Node n;
  n.op = Op::kDropout;
  n.input = x.index;
  if (!training || rate == 0.0) {
    n.aux = Matrix::Ones(in.rows(), in.cols());
    n.value = in;
    return push(std::move(n));
  }
  const double keep_scale = 1.0 / (1.0 - rate);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  n.aux.resize(in.rows(), in.cols());
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    for (Eigen::Index r = 0; r < in.rows(); ++r) {
      n.aux(r, c) = uniform(rng) < rate ? 0.0 : keep_scale;
    }
  }
  n.value = in.cwiseProduct(n.aux);
  return push(std::move(n));
}

NodeId Tape::sum(NodeId x) {
  Node n;
  n.op = Op::kSum;
  n.input = x.index;
  n.value = Matrix::Constant(1, 1, node(x).value.sum());
  return push(std::move(n));
}

NodeId Tape::mean_squared_error(NodeId prediction, const Matrix& target) {
  const Matrix& pred = node(prediction).value;
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw DimensionError("mean_squared_error: prediction and target shapes differ");
  }
  if (pred.size() == 0) throw ContractError("mean_squared_error: empty batch");
  Node n;
  n.op = Op::kMse;
  n.input = prediction.index;
  n.aux = target;
  n.value = Matrix::Constant(
      1, 1, (pred - target).squaredNorm() / static_cast<double>(pred.size()));
  return push(std::move(n));
}

const Matrix& Tape::value(NodeId id) const { return node(id).value; }

const Matrix& Tape::grad(NodeId id) const {
  const Node& n = node(id);
  if (n.grad.size() == 0 && n.value.size() != 0) {
    throw StateError("tape: no gradient recorded for node; call backward()");
  }
  return n.grad;
}

void Tape::backward(NodeId loss) {
  if (nodes_.empty()) throw StateError("backward called before any forward pass");
  if (loss.index >= nodes_.size()) throw StateError("backward: unknown loss node");
  Node& root = nodes_[loss.index];
  if (root.value.rows() != 1 || root.value.cols() != 1) {
    throw StateError("backward: loss node must be a scalar");
  }
  for (Node& n : nodes_) n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
  root.grad(0, 0) = 1.0;

  for (std::size_t i = loss.index + 1; i-- > 0;) {
    Node& n = nodes_[i];
    if (n.op == Op::kInput) continue;
    Node& in = nodes_[n.input];
    const Matrix& g = n.grad;
    switch (n.op) {
      case Op::kInput:
        break;
      case Op::kAffine: {
        const Matrix& w = params_->value(n.weight);
        if (!n.masked) {
          in.grad.noalias() += w.transpose() * g;
          params_->mutable_grad(n.weight).noalias() += g * in.value.transpose();
          params_->mutable_grad(n.bias) += g.rowwise().sum();
          break;
        }
        // Pass-through columns carry their gradient unchanged.
        Matrix through = g;
        if (!n.columns.empty()) {
          const Matrix g_active = g(Eigen::all, n.columns);
          const Matrix x_active = in.value(Eigen::all, n.columns);
          through(Eigen::all, n.columns) = w.transpose() * g_active;
          params_->mutable_grad(n.weight).noalias() +=
              g_active * x_active.transpose();
          params_->mutable_grad(n.bias) += g_active.rowwise().sum();
        }
        in.grad += through;
        break;
      }
      case Op::kActivation: {
        if (!n.masked) {
          in.grad += g.cwiseProduct(activation_derivative(n.activation, in.value));
          break;
        }
        Matrix through = g;
        if (!n.columns.empty()) {
          const Matrix x_active = in.value(Eigen::all, n.columns);
          const Matrix g_active = g(Eigen::all, n.columns);
          through(Eigen::all, n.columns) =
              g_active.cwiseProduct(activation_derivative(n.activation, x_active));
        }
        in.grad += through;
        break;
      }
      case Op::kDropout:
        in.grad += g.cwiseProduct(n.aux);
        break;
      case Op::kSum:
        in.grad.array() += g(0, 0);
        break;
      case Op::kMse:
        in.grad += g(0, 0) * 2.0 / static_cast<double>(n.aux.size()) *
                   (in.value - n.aux);
        break;
    }
  }
}

}  // namespace ncore::diffcore
