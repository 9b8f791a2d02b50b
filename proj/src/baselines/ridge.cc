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
#include "ncore/baselines/ridge.h"

#include "ncore/common/errors.h"

namespace ncore::baselines {

double RidgeModel::predict(std::span<const double> x) const {
  if (static_cast<Eigen::Index>(x.size()) != coefficients.size()) {
    throw DimensionError("ridge: input length does not match the coefficients");
  }
  double out = intercept;
  for (Eigen::Index q = 0; q < coefficients.size(); ++q) out += coefficients[q] * x[q];
  return out;
}

RidgeModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y,
                     double regularization) {
  if (!(regularization > 0.0)) {
    throw ConfigError("ridge: regularization strength C must be positive");
  }
  if (x.rows() == 0) throw ContractError("ridge: no training rows");
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
    throw ContractError("ridge: design and target lengths differ");
  }
  const Eigen::Map<const Eigen::VectorXd> target(y.data(), x.rows());
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = target.mean();
  const Eigen::MatrixXd centered = x.rowwise() - x_mean;
  const Eigen::VectorXd y_centered = target.array() - y_mean;

  Eigen::MatrixXd gram = centered.transpose() * centered;
  gram.diagonal().array() += regularization;
  Eigen::LLT<Eigen::MatrixXd> cholesky(gram);
  if (cholesky.info() != Eigen::Success) {
    throw DegenerateDataError("ridge: regularized Gram matrix is not positive definite");
  }
  RidgeModel model;
  model.coefficients = cholesky.solve(centered.transpose() * y_centered);
  model.intercept = y_mean - x_mean.dot(model.coefficients);
  return model;
}

}  // namespace ncore::baselines
