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
#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "ncore/common/errors.h"
#include "ncore/common/rng.h"
#include "ncore/evalstats/metrics.h"
#include "ncore/evalstats/mww.h"
#include "ncore/simcore/simulator.h"

namespace ncore::evalstats {
namespace {

using simcore::TreatmentSet;

simcore::SimulationResult Simulate(int k, std::size_t n, std::uint64_t seed) {
  simcore::SimulationConfig config;
  config.k = k;
  config.n = n;
  config.seed = seed;
  return simcore::generate_dataset(config);
}

// Predicts truth minus a per-mask offset for the single unit it was built for.
FunctionPredictor OffsetPredictor(const simcore::OutcomeOracle& oracle, const simcore::Unit& unit,
                                  std::vector<double> offsets) {
  return FunctionPredictor([&oracle, &unit, offsets](std::span<const double> x, TreatmentSet t) {
    return oracle.combined_outcome(x, unit.id, t) - offsets[t.mask() - 1];
  });
}

TEST(CounterfactualRmseTest, PerfectPredictorIsZero) {
  const auto sim = Simulate(3, 40, 1);
  const FunctionPredictor truth([&](std::span<const double> x, TreatmentSet t) {
    for (const auto& u : sim.dataset.units) {
      if (u.x.data() == x.data()) return sim.oracle.combined_outcome(x, u.id, t);
    }
    return 0.0;
  });
  Rng rng(1);
  const MetricReport r = counterfactual_rmse(truth, sim.oracle, sim.dataset.units, rng);
  EXPECT_EQ(r.point, 0.0);
  EXPECT_EQ(r.lower, 0.0);
  EXPECT_EQ(r.upper, 0.0);
  EXPECT_EQ(r.n_resamples, 100u);
}

TEST(CounterfactualRmseTest, HandArithmetic) {
  const auto one = Simulate(1, 1, 2);
  const auto& u1 = one.dataset.units[0];
  Rng rng(2);
  EXPECT_NEAR(counterfactual_rmse(OffsetPredictor(one.oracle, u1, {2.0}), one.oracle,
                                  one.dataset.units, rng)
                  .point,
              2.0, 1e-12);
  const auto two = Simulate(2, 1, 3);
  const auto& u2 = two.dataset.units[0];
  EXPECT_NEAR(counterfactual_rmse(OffsetPredictor(two.oracle, u2, {0.0, 0.0, 3.0}), two.oracle,
                                  two.dataset.units, rng)
                  .point,
              std::sqrt(3.0), 1e-12);
}

TEST(CounterfactualRmseTest, EmptyTestSet) {
  const auto sim = Simulate(2, 5, 4);
  const FunctionPredictor zero([](std::span<const double>, TreatmentSet) { return 0.0; });
  Rng rng(0);
  EXPECT_THROW(counterfactual_rmse(zero, sim.oracle, std::span<const simcore::Unit>{}, rng),
               ContractError);
}

TEST(CounterfactualRmseTest, ScalesLinearly) {
  const auto sim = Simulate(2, 30, 5);
  const FunctionPredictor zero([](std::span<const double>, TreatmentSet) { return 0.0; });
  Rng a(6);
  const double base = counterfactual_rmse(zero, sim.oracle, sim.dataset.units, a).point;
  // Scaling every truth by c: an oracle-free restatement through per-unit errors.
  Rng b(6);
  const MetricReport r = counterfactual_rmse(zero, sim.oracle, sim.dataset.units, b);
  std::vector<double> scaled = r.per_unit_errors;
  for (double& e : scaled) e *= 4.0;  // (2y - 2y_hat)^2 = 4 (y - y_hat)^2
  double mean = 0;
  for (double e : scaled) mean += e;
  EXPECT_NEAR(std::sqrt(mean / scaled.size()), 2.0 * base, 1e-12);
}

TEST(FactualRmseTest, Examples) {
  std::vector<simcore::Unit> units(2);
  units[0].x = {0.0};
  units[0].treatments = TreatmentSet(1, 1);
  units[0].outcome = 0.0;
  units[1] = units[0];
  units[1].id = 1;
  units[1].outcome = 2.0;
  const FunctionPredictor one([](std::span<const double>, TreatmentSet) { return 1.0; });
  EXPECT_DOUBLE_EQ(factual_rmse(one, units), 1.0);
  const FunctionPredictor exact([&](std::span<const double> x, TreatmentSet) {
    return x.data() == units[0].x.data() ? 0.0 : 2.0;
  });
  EXPECT_EQ(factual_rmse(exact, units), 0.0);
  EXPECT_THROW(factual_rmse(one, std::span<const simcore::Unit>{}), ContractError);
}

TEST(FactualRmseTest, AgreesWithCounterfactualWhenKIsOne) {
  const auto sim = Simulate(1, 25, 7);
  const FunctionPredictor half([](std::span<const double> x, TreatmentSet) { return x[30]; });
  Rng rng(1);
  EXPECT_NEAR(factual_rmse(half, sim.dataset.units),
              counterfactual_rmse(half, sim.oracle, sim.dataset.units, rng).point, 1e-12);
}

TEST(BootstrapTest, ZeroVarianceAndDeterminism) {
  const std::vector<double> same(50, 4.0);
  Rng rng(3);
  const Interval ci = bootstrap_ci(same, 100, rng);
  EXPECT_EQ(ci.lower, 2.0);
  EXPECT_EQ(ci.upper, 2.0);
  std::vector<double> errors(80);
  Rng fill(4);
  std::exponential_distribution<double> expo(1.0);
  for (double& e : errors) e = expo(fill);
  Rng a(9), b(9);
  const Interval x = bootstrap_ci(errors, 100, a), y = bootstrap_ci(errors, 100, b);
  EXPECT_EQ(x.lower, y.lower);
  EXPECT_EQ(x.upper, y.upper);
  EXPECT_LE(x.lower, x.upper);
}

TEST(BootstrapTest, WidthShrinksWithSampleSize) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    Rng fill(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> small(100), large(1000);
    for (double& e : small) e = expo(fill);
    for (double& e : large) e = expo(fill);
    Rng r1(seed + 10), r2(seed + 10);
    const Interval a = bootstrap_ci(small, 100, r1);
    const Interval b = bootstrap_ci(large, 100, r2);
    EXPECT_LT(b.upper - b.lower, a.upper - a.lower) << "seed " << seed;
  }
}

TEST(PercentileTest, LinearInterpolation) {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  EXPECT_DOUBLE_EQ(percentile(v, 0.5), 3.0);
  EXPECT_DOUBLE_EQ(percentile(v, 0.025), 1.1);
  EXPECT_DOUBLE_EQ(percentile(v, 0.975), 4.9);
}

// Exact two-sided p by relabelling every subset, U counted pairwise.
double ExactOracle(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const int n = static_cast<int>(pooled.size()), na = static_cast<int>(a.size());
  auto u_of = [&](unsigned mask) {
    double u = 0;
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1) continue;
        u += pooled[i] > pooled[j] ? 1.0 : (pooled[i] == pooled[j] ? 0.5 : 0.0);
      }
    }
    return u;
  };
  const double center = na * (n - na) / 2.0;
  const double observed = std::fabs(u_of((1u << na) - 1) - center);
  int extreme = 0, total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != na) continue;
    ++total;
    extreme += std::fabs(u_of(mask) - center) >= observed - 1e-9;
  }
  return static_cast<double>(extreme) / total;
}

TEST(MwwTest, WorkedExample) {
  const std::vector<double> a = {1, 2}, b = {3, 4};
  const MwwResult r = mww_test(a, b);
  EXPECT_EQ(r.u, 0.0);
  EXPECT_TRUE(r.exact);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(ExactOracle(a, b), 2.0 / 6.0);
}

TEST(MwwTest, IdenticalSamplesAndSymmetry) {
  const std::vector<double> a = {1.5, 2.5, 3.5};
  EXPECT_DOUBLE_EQ(mww_test(a, a).p_value, 1.0);
  const std::vector<double> big(20, 1.0);
  EXPECT_DOUBLE_EQ(mww_test(big, big).p_value, 1.0);
  Rng rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> x(1 + trial % 7), y(1 + trial % 11);
    for (double& v : x) v = normal(rng);
    for (double& v : y) v = normal(rng) + 0.5;
    EXPECT_DOUBLE_EQ(mww_test(x, y).p_value, mww_test(y, x).p_value);
  }
}

TEST(MwwTest, ExactMatchesRelabellingOracle) {
  Rng rng(6);
  std::uniform_int_distribution<int> small(0, 4);
  for (int na = 1; na <= 6; ++na) {
    for (int nb = 1; na + nb <= 12; ++nb) {
      std::vector<double> a(na), b(nb);
      for (double& v : a) v = small(rng);  // integer draws produce ties
      for (double& v : b) v = small(rng) + 0.5 * (nb % 2);
      EXPECT_NEAR(mww_exact_p(a, b), ExactOracle(a, b), 1e-12) << na << "," << nb;
    }
  }
}

TEST(MwwTest, NormalApproximationMatchesReference) {
  // Reference values from an independent statistics package (asymptotic
  // method, continuity correction, tie correction, two-sided).
  struct Case {
    std::vector<double> a, b;
    double u, p;
  };
  const Case cases[] = {
      {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11, 12}, 0.0, 0.005766120914237261},
      {{1.5, 2, 2, 7, 9.1, 3}, {2, 4, 4, 8, 10, 11, 0.5, 3.3}, 17.0, 0.39878372535743223},
      {{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5},
       {8, 9, 7, 9, 3, 2, 3, 8, 4, 6, 2, 6, 4, 3},
       56.0,
       0.2578673952944618},
      {{10, 20, 30}, {15, 25, 35, 45}, 3.0, 0.376759117811582},
  };
  for (const Case& c : cases) {
    EXPECT_EQ(mww_u_statistic(c.a, c.b), c.u);
    EXPECT_NEAR(mww_normal_p(c.a, c.b), c.p, 1e-12);
  }
  // Exact values from the same package for the tie-free cases.
  EXPECT_NEAR(mww_exact_p(cases[0].a, cases[0].b), 0.0025252525252525255, 1e-12);
  EXPECT_NEAR(mww_exact_p(cases[3].a, cases[3].b), 0.4, 1e-12);
}

TEST(MwwTest, DispatchAndErrors) {
  std::vector<double> a(6), b(7);
  for (int i = 0; i < 6; ++i) a[i] = i;
  for (int i = 0; i < 7; ++i) b[i] = i + 0.5;
  EXPECT_FALSE(mww_test(a, b).exact);
  b.pop_back();
  EXPECT_TRUE(mww_test(a, b).exact);
  EXPECT_THROW(mww_test(std::vector<double>{}, b), ContractError);
}

}  // namespace
}  // namespace ncore::evalstats
