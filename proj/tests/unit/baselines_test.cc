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
#include <bit>
#include <cmath>
#include <limits>

#include "gtest/gtest.h"
#include "ncore/baselines/composite.h"
#include "ncore/baselines/knn.h"
#include "ncore/baselines/ridge.h"
#include "ncore/common/errors.h"
#include "ncore/common/rng.h"

namespace ncore::baselines {
namespace {

using simcore::TreatmentSet;
using simcore::Unit;

TEST(RidgeTest, HandComputedTwoPoints) {
  Eigen::MatrixXd x(2, 1);
  x << 1, 2;
  const std::vector<double> y = {1, 2};
  const RidgeModel m = ridge_fit(x, y, 1.0);
  // Centered x = (-0.5, 0.5), centered y = (-0.5, 0.5): beta = 0.5 / (0.5 + 1).
  EXPECT_NEAR(m.coefficients(0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.predict(std::vector<double>{1.5}), 1.5, 1e-15);
}

TEST(RidgeTest, ConstantTargetAndShrinkage) {
  Rng rng(2);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(30, 4);
  const std::vector<double> flat(30, 2.5);
  const RidgeModel c = ridge_fit(x, flat, 1.0);
  EXPECT_LT(c.coefficients.norm(), 1e-12);
  EXPECT_NEAR(c.intercept, 2.5, 1e-12);
  std::vector<double> y(30);
  for (int i = 0; i < 30; ++i) y[i] = x(i, 0) - 2 * x(i, 2) + 0.1 * i;
  double previous = std::numeric_limits<double>::infinity();
  for (double reg : {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
    const double norm = ridge_fit(x, y, reg).coefficients.norm();
    EXPECT_LT(norm, previous);
    previous = norm;
  }
}

TEST(RidgeTest, NormalEquationResidual) {
  for (double reg : kRidgeChoices) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(seed);
      std::normal_distribution<double> normal;
      const int m = 5 + static_cast<int>(seed % 40), p = 1 + static_cast<int>(seed % 9);
      Eigen::MatrixXd x(m, p);
      std::vector<double> y(m);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < p; ++j) x(i, j) = normal(rng);
        y[i] = normal(rng);
      }
      const RidgeModel fit = ridge_fit(x, y, reg);
      const Eigen::RowVectorXd mean = x.colwise().mean();
      const Eigen::MatrixXd xc = x.rowwise() - mean;
      Eigen::VectorXd yc = Eigen::Map<Eigen::VectorXd>(y.data(), m);
      const double ymean = yc.mean();
      yc.array() -= ymean;
      const Eigen::MatrixXd gram =
          xc.transpose() * xc + reg * Eigen::MatrixXd::Identity(p, p);
      EXPECT_LE((gram * fit.coefficients - xc.transpose() * yc).norm(), 1e-8);
      // Independent solve through a full-pivot LU.
      const Eigen::VectorXd beta = gram.fullPivLu().solve(xc.transpose() * yc);
      EXPECT_LE((beta - fit.coefficients).norm(), 1e-8);
      EXPECT_NEAR(fit.intercept, ymean - mean.dot(fit.coefficients), 1e-12);
    }
  }
}

TEST(RidgeTest, ChoiceList) {
  EXPECT_EQ(std::vector<double>(std::begin(kRidgeChoices), std::end(kRidgeChoices)),
            (std::vector<double>{0.1, 1.0, 10.0}));
}

Unit MakeUnit(std::int64_t id, std::vector<double> x, std::uint32_t mask, int k, double y) {
  Unit u;
  u.id = id;
  u.x = std::move(x);
  u.treatments = TreatmentSet(mask, k);
  u.outcome = y;
  return u;
}

TEST(KnnTest, Basics) {
  KnnGroup g;
  g.add(MakeUnit(5, {0, 0}, 1, 2, 1.0));
  g.add(MakeUnit(2, {2, 0}, 1, 2, 3.0));
  g.add(MakeUnit(9, {0, 4}, 1, 2, 8.0));
  EXPECT_EQ(knn_predict(g, std::vector<double>{2, 0}, 1), 3.0);
  EXPECT_DOUBLE_EQ(knn_predict(g, std::vector<double>{7, 7}, 3), 4.0);
  EXPECT_DOUBLE_EQ(knn_predict(g, std::vector<double>{7, 7}, 10), 4.0);
  // (1, 0) is equidistant from ids 5 and 2; the lower id wins.
  EXPECT_EQ(knn_predict(g, std::vector<double>{1, 0}, 1), 3.0);
}

TEST(KnnTest, PermutationInvariant) {
  Rng rng(3);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Unit> units;
  for (int i = 0; i < 40; ++i) units.push_back(MakeUnit(i, {u(rng), u(rng)}, 1, 1, u(rng)));
  KnnGroup a, b;
  for (const Unit& unit : units) a.add(unit);
  std::vector<Unit> shuffled = units;
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  for (const Unit& unit : shuffled) b.add(unit);
  for (int q = 0; q < 20; ++q) {
    const std::vector<double> x = {u(rng), u(rng)};
    EXPECT_EQ(knn_predict(a, x, 5), knn_predict(b, x, 5));
  }
}

TEST(CompositeTest, OneSubModelPerObservedMask) {
  std::vector<Unit> units;
  const std::uint32_t masks[] = {1, 2, 5};
  for (int i = 0; i < 30; ++i) {
    units.push_back(MakeUnit(i, {0.1 * i, 1.0 - 0.05 * i}, masks[i % 3], 3, masks[i % 3] * 10.0));
  }
  BaseLearnerSpec spec;
  const CompositeModel model = composite_fit(units, 3, spec);
  EXPECT_EQ(model.sub_models().size(), 3u);
  // Constant outcome per group: each sub-model recovers its own constant.
  for (std::uint32_t m : masks) {
    EXPECT_NEAR(model.predict(std::vector<double>{0.3, 0.4}, TreatmentSet(m, 3)), m * 10.0, 1e-9);
  }
}

TEST(CompositeTest, SingleUnitKnnGroup) {
  std::vector<Unit> units = {MakeUnit(0, {1, 1}, 2, 2, 4.5), MakeUnit(1, {0, 0}, 1, 2, 1.0),
                             MakeUnit(2, {5, 5}, 1, 2, 2.0)};
  BaseLearnerSpec spec;
  spec.kind = BaseLearnerSpec::Kind::kKnn;
  spec.knn_neighbors = 1;
  const CompositeModel model = composite_fit(units, 2, spec);
  for (double v : {-3.0, 0.0, 9.0}) {
    EXPECT_EQ(model.predict(std::vector<double>{v, v}, TreatmentSet(2, 2)), 4.5);
  }
}

// Hamming-nearest observed mask by full enumeration; ties to the lowest mask.
std::uint32_t NearestObserved(const std::vector<std::uint32_t>& observed, std::uint32_t t) {
  std::uint32_t best = 0;
  int best_d = 1 << 30;
  for (std::uint32_t m = 1; m < (1u << 20); ++m) {
    if (std::find(observed.begin(), observed.end(), m) == observed.end()) continue;
    const int d = std::popcount(m ^ t);
    if (d < best_d) {
      best_d = d;
      best = m;
    }
  }
  return best;
}

TEST(CompositeTest, HammingFallbackMatchesEnumeration) {
  Rng rng(7);
  const int k = 5;
  std::uniform_int_distribution<std::uint32_t> draw(1, 31);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Unit> units;
    std::vector<std::uint32_t> observed;
    for (int i = 0; i < 6; ++i) {
      const std::uint32_t m = draw(rng);
      if (std::find(observed.begin(), observed.end(), m) == observed.end()) observed.push_back(m);
      // Distinct constant per mask identifies which sub-model answered.
      units.push_back(MakeUnit(i, {0.0}, m, k, 100.0 + m));
    }
    BaseLearnerSpec spec;
    const CompositeModel model = composite_fit(units, k, spec);
    for (std::uint32_t t = 1; t < 32; ++t) {
      const std::uint32_t expected = NearestObserved(observed, t);
      EXPECT_EQ(model.resolve(t), expected);
      EXPECT_NEAR(model.predict(std::vector<double>{0.0}, TreatmentSet(t, k)), 100.0 + expected,
                  1e-9);
    }
  }
}

TEST(CompositeTest, GlobalFallback) {
  std::vector<Unit> units = {MakeUnit(0, {0}, 1, 2, 1.0), MakeUnit(1, {1}, 1, 2, 3.0)};
  BaseLearnerSpec spec;
  spec.fallback = FallbackPolicy::kGlobal;
  const CompositeModel model = composite_fit(units, 2, spec);
  EXPECT_EQ(model.resolve(2), 0u);
  EXPECT_EQ(model.resolve(1), 1u);
  EXPECT_EQ(model.predict(std::vector<double>{0.5}, TreatmentSet(3, 2)),
            model.predict(std::vector<double>{0.5}, TreatmentSet(1, 2)));
}

TEST(CompositeTest, EmptyModelSignalsError) {
  const CompositeModel empty;
  EXPECT_THROW(empty.resolve(1), ContractError);
  EXPECT_THROW(composite_fit(std::vector<Unit>{}, 2, BaseLearnerSpec{}), ContractError);
}

}  // namespace
}  // namespace ncore::baselines
