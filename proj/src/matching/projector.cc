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
#include "ncore/matching/projector.h"

#include <string>

#include "ncore/common/errors.h"

namespace ncore::matching {

BalancingProjector::BalancingProjector(Eigen::VectorXd mean,
                                       Eigen::MatrixXd components)
    : mean_(std::move(mean)), components_(std::move(components)) {
  if (components_.cols() != mean_.size()) {
    throw DimensionError("projector: component width differs from mean length");
  }
}

BalancingProjector BalancingProjector::fit(const Eigen::MatrixXd& data, int dim) {
  if (data.rows() < 2) throw ContractError("projector: need at least two rows");
  if (dim < 1 || dim > data.cols()) {
    throw ContractError("projector: dimension must be in [1, p], got " +
                        std::to_string(dim));
  }
  const Eigen::VectorXd mean = data.colwise().mean().transpose();
  const Eigen::MatrixXd centered = data.rowwise() - mean.transpose();
  const Eigen::MatrixXd covariance =
      centered.transpose() * centered / static_cast<double>(data.rows() - 1);
  const double scale = 1.0 + data.cwiseAbs().maxCoeff();
  if (covariance.trace() <= 1e-20 * scale * scale) {
    throw DegenerateDataError("projector: data has zero covariance");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance);
  if (solver.info() != Eigen::Success) {
    throw DegenerateDataError("projector: eigendecomposition failed");
  }
  // Eigenvalues come back ascending.
  const Eigen::Index p = data.cols();
  Eigen::MatrixXd components(dim, p);
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd axis = solver.eigenvectors().col(p - 1 - i);
    Eigen::Index largest = 0;
    axis.cwiseAbs().maxCoeff(&largest);
    if (axis[largest] < 0.0) axis = -axis;
    components.row(i) = axis.transpose();
  }
  return BalancingProjector(mean, std::move(components));
}

Eigen::VectorXd BalancingProjector::project(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != mean_.size()) {
    throw DimensionError("projector: input has length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(mean_.size()));
  }
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), mean_.size());
  return components_ * (v - mean_);
}

}  // namespace ncore::matching
