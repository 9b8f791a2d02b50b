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
#ifndef NCORE_DIFFCORE_OPTIMIZER_H_
#define NCORE_DIFFCORE_OPTIMIZER_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "ncore/diffcore/param_store.h"

namespace ncore::diffcore {

enum class OptimizerKind { kSgd, kAdam };

std::string_view to_string(OptimizerKind kind);
OptimizerKind parse_optimizer(std::string_view name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double learning_rate = 0.003;
  // L2 penalty folded into the gradient: g + weight_decay * theta.
  double weight_decay = 0.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  // Throws ConfigError for a non-positive learning rate or negative decay.
  void validate() const;
};

// Applies one update to every touched parameter of a store.
//
// Parameters whose gradient slot was not written since the last zero_grad()
// are left exactly as they are, weight decay included, so a treatment arm
// that saw no sample in a minibatch does not move. Adam keeps a per-parameter
// step counter for bias correction that only advances on touched steps.
class Optimizer {
 public:
  Optimizer(OptimizerConfig config, const ParamStore& params);

  void step(ParamStore& params);

  const OptimizerConfig& config() const { return config_; }

 private:
  OptimizerConfig config_;
  std::vector<Matrix> first_moment_;
  std::vector<Matrix> second_moment_;
  std::vector<std::int64_t> steps_;
};

}  // namespace ncore::diffcore

#endif  // NCORE_DIFFCORE_OPTIMIZER_H_
