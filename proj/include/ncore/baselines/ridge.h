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
#ifndef NCORE_BASELINES_RIDGE_H_
#define NCORE_BASELINES_RIDGE_H_

#include <span>

#include <Eigen/Dense>

namespace ncore::baselines {

// Regularization strengths searched for ridge regression.
inline constexpr double kRidgeChoices[] = {0.1, 1.0, 10.0};

struct RidgeModel {
  Eigen::VectorXd coefficients;
  double intercept = 0.0;

  double predict(std::span<const double> x) const;
};

// Solves (Xc^T Xc + C I) beta = Xc^T yc on mean-centered data by Cholesky;
// intercept = mean(y) - beta . mean(X). Throws ConfigError unless C > 0 and
// ContractError for an empty design or mismatched lengths.
RidgeModel ridge_fit(const Eigen::MatrixXd& x, std::span<const double> y,
                     double regularization);

}  // namespace ncore::baselines

#endif  // NCORE_BASELINES_RIDGE_H_
