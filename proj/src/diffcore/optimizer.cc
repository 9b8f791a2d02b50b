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
#include "ncore/diffcore/optimizer.h"

#include <cmath>
#include <string>

#include "ncore/common/errors.h"

namespace ncore::diffcore {

std::string_view to_string(OptimizerKind kind) {
  return kind == OptimizerKind::kSgd ? "sgd" : "adam";
}

OptimizerKind parse_optimizer(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  throw ConfigError("unknown optimizer '" + std::string(name) + "'");
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    throw ConfigError("learning rate must be positive, got " +
                      std::to_string(learning_rate));
  }
  if (!(weight_decay >= 0.0)) throw ConfigError("weight decay must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("adam betas must be in [0, 1)");
  }
  if (!(epsilon > 0.0)) throw ConfigError("adam epsilon must be positive");
}

Optimizer::Optimizer(OptimizerConfig config, const ParamStore& params)
    : config_(config) {
  config_.validate();
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& value = params.value(ParamId{i});
    first_moment_.push_back(Matrix::Zero(value.rows(), value.cols()));
    second_moment_.push_back(Matrix::Zero(value.rows(), value.cols()));
  }
  steps_.assign(params.size(), 0);
}

void Optimizer::step(ParamStore& params) {
  if (params.size() != steps_.size()) {
    throw DimensionError("optimizer: parameter store layout changed");
  }
  const double lr = config_.learning_rate;
  const double decay = config_.weight_decay;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const ParamId id{i};
    if (!params.touched(id)) continue;
    Eigen::Ref<Matrix> theta = params.mutable_value(id);
    Matrix g = params.grad(id);
    if (decay != 0.0) g += decay * theta;
    if (config_.kind == OptimizerKind::kSgd) {
      theta -= lr * g;
      continue;
    }
    const std::int64_t t = ++steps_[i];
    first_moment_[i] = config_.beta1 * first_moment_[i] + (1.0 - config_.beta1) * g;
    second_moment_[i] = config_.beta2 * second_moment_[i] +
                        (1.0 - config_.beta2) * g.cwiseProduct(g);
    const double correction1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t));
    const double correction2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t));
    theta.array() -= lr * (first_moment_[i].array() / correction1) /
                     ((second_moment_[i].array() / correction2).sqrt() +
                      config_.epsilon);
  }
}

}  // namespace ncore::diffcore
