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
#ifndef NCORE_MATCHING_PROJECTOR_H_
#define NCORE_MATCHING_PROJECTOR_H_

#include <span>

#include <Eigen/Dense>

namespace ncore::matching {

inline constexpr int kDefaultBalancingDim = 8;

// Mean-centered PCA projection used as the balancing score.
class BalancingProjector {
 public:
  BalancingProjector() = default;
  // `components` is D x p with orthonormal rows.
  BalancingProjector(Eigen::VectorXd mean, Eigen::MatrixXd components);

  // Top-`dim` principal axes of the rows of `data` (n x p), ordered by
  // descending eigenvalue, each signed so its largest-magnitude entry is
  // positive. Throws ContractError unless n >= 2 and 1 <= dim <= p, and
  // DegenerateDataError when the data has zero covariance.
  static BalancingProjector fit(const Eigen::MatrixXd& data, int dim);

  // components * (x - mean). Throws DimensionError on length mismatch.
  Eigen::VectorXd project(std::span<const double> x) const;

  int dim() const { return static_cast<int>(components_.rows()); }
  int input_dim() const { return static_cast<int>(components_.cols()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& components() const { return components_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd components_;
};

}  // namespace ncore::matching

#endif  // NCORE_MATCHING_PROJECTOR_H_
