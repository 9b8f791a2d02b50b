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
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "ncore/common/errors.h"
#include "ncore/common/rng.h"
#include "ncore/diffcore/checkpoint.h"
#include "ncore/diffcore/optimizer.h"
#include "ncore/diffcore/param_store.h"
#include "ncore/diffcore/tape.h"

namespace ncore::diffcore {
namespace {

Matrix M(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

TEST(AffineTest, IdentityAndHandArithmetic) {
  ParamStore params;
  const ParamId w = params.add("w", Matrix::Identity(3, 3));
  const ParamId b = params.add("b", Matrix::Zero(3, 1));
  const ParamId w2 = params.add("w2", M({{2}}));
  const ParamId b2 = params.add("b2", M({{1}}));
  Tape tape(params);
  const Matrix x = M({{1.5}, {-2}, {0.25}});
  EXPECT_EQ(tape.value(tape.affine(w, b, tape.input(x))), x);
  EXPECT_EQ(tape.value(tape.affine(w2, b2, tape.input(M({{3}}))))(0, 0), 7.0);
}

TEST(AffineTest, BiasGradientOfSumIsOnes) {
  ParamStore params;
  Rng rng(1);
  const ParamId w = params.add("w", glorot_uniform(4, 3, rng));
  const ParamId b = params.add("b", Matrix::Zero(4, 1));
  Tape tape(params);
  const NodeId out = tape.affine(w, b, tape.input(Matrix::Random(3, 1)));
  tape.backward(tape.sum(out));
  EXPECT_EQ(params.grad(b), Matrix::Ones(4, 1));
}

TEST(AffineTest, ShapeMismatch) {
  ParamStore params;
  const ParamId w = params.add("w", Matrix::Zero(2, 3));
  const ParamId b = params.add("b", Matrix::Zero(2, 1));
  Tape tape(params);
  EXPECT_THROW(tape.affine(w, b, tape.input(Matrix::Zero(4, 1))), DimensionError);
}

TEST(ActivationTest, ReluAndLinear) {
  ParamStore params;
  const ParamId w = params.add("w", Matrix::Identity(2, 2));
  const ParamId b = params.add("b", Matrix::Zero(2, 1));
  Tape tape(params);
  const NodeId x = tape.affine(w, b, tape.input(M({{-1}, {2}})));
  const NodeId r = tape.activation(ActivationKind::kRelu, x);
  EXPECT_EQ(tape.value(r), M({{0}, {2}}));
  EXPECT_EQ(tape.value(tape.activation(ActivationKind::kLinear, x)), tape.value(x));
  tape.backward(tape.sum(r));
  EXPECT_EQ(tape.grad(x), M({{0}, {1}}));
  EXPECT_EQ(parse_activation("relu"), ActivationKind::kRelu);
  EXPECT_THROW(parse_activation("tanh"), ConfigError);
}

TEST(BackwardTest, OneParameterModelHandGradient) {
  // loss = (w*x + b - y)^2 with x=2, y=1, w=0.5, b=0.25: residual 0.25.
  ParamStore params;
  const ParamId w = params.add("w", M({{0.5}}));
  const ParamId b = params.add("b", M({{0.25}}));
  Tape tape(params);
  const NodeId pred = tape.affine(w, b, tape.input(M({{2}})));
  tape.backward(tape.mean_squared_error(pred, M({{1}})));
  EXPECT_DOUBLE_EQ(params.grad(w)(0, 0), 2 * 0.25 * 2);
  EXPECT_DOUBLE_EQ(params.grad(b)(0, 0), 2 * 0.25);
}

TEST(BackwardTest, AbsentParameterHasZeroGradient) {
  ParamStore params;
  const ParamId w = params.add("w", M({{1.5}}));
  const ParamId b = params.add("b", M({{0}}));
  const ParamId unused = params.add("unused", M({{3}}));
  Tape tape(params);
  tape.backward(tape.sum(tape.affine(w, b, tape.input(M({{1}})))));
  EXPECT_EQ(params.grad(unused)(0, 0), 0.0);
  EXPECT_FALSE(params.touched(unused));
  EXPECT_TRUE(params.touched(w));
}

TEST(BackwardTest, RequiresForward) {
  ParamStore params;
  Tape tape(params);
  EXPECT_THROW(tape.backward(NodeId{0}), StateError);
}

TEST(BackwardTest, ReplayIsIdempotent) {
  ParamStore params;
  Rng rng(4);
  const ParamId w = params.add("w", glorot_uniform(5, 3, rng));
  const ParamId b = params.add("b", Matrix::Constant(5, 1, 0.1));
  const ParamId h = params.add("h", glorot_uniform(1, 5, rng));
  const ParamId hb = params.add("hb", Matrix::Zero(1, 1));
  Tape tape(params);
  const NodeId a = tape.activation(ActivationKind::kRelu,
                                   tape.affine(w, b, tape.input(Matrix::Random(3, 7))));
  const NodeId loss = tape.mean_squared_error(tape.affine(h, hb, a), Matrix::Random(1, 7));
  tape.backward(loss);
  const Matrix first = params.grad(w);
  params.zero_grad();
  tape.backward(loss);
  EXPECT_EQ(params.grad(w), first);
}

TEST(MaskedTest, UntouchedColumnsPassThrough) {
  ParamStore params;
  const ParamId w = params.add("w", M({{2, 0}, {0, 2}}));
  const ParamId b = params.add("b", M({{1}, {1}}));
  Tape tape(params);
  const Matrix x = M({{1, 2, 3}, {4, 5, 6}});
  const std::vector<Eigen::Index> cols = {1};
  const NodeId y = tape.masked_affine(w, b, tape.input(x), cols);
  EXPECT_EQ(tape.value(y), M({{1, 5, 3}, {4, 11, 6}}));
  const NodeId r = tape.masked_activation(ActivationKind::kRelu,
                                          tape.input(M({{-1, -1}})), std::vector<Eigen::Index>{0});
  EXPECT_EQ(tape.value(r), M({{0, -1}}));
}

// Scalar loss of a random small graph exercising every op.
struct GradientProblem {
  ParamStore params;
  std::vector<ParamId> ids;
  Matrix input;
  Matrix target;
  std::vector<Eigen::Index> arm_columns;
  double rate = 0.2;
  std::uint64_t dropout_seed = 0;

  explicit GradientProblem(std::uint64_t seed) : dropout_seed(seed) {
    Rng rng(seed);
    std::uniform_int_distribution<int> width(2, 5);
    const int p = width(rng), n = width(rng), batch = 6;
    ids.push_back(params.add("w0", glorot_uniform(n, p, rng)));
    ids.push_back(params.add("b0", Matrix::Constant(n, 1, 0.05)));
    ids.push_back(params.add("w1", glorot_uniform(n, n, rng)));
    ids.push_back(params.add("b1", Matrix::Constant(n, 1, -0.03)));
    ids.push_back(params.add("w2", glorot_uniform(1, n, rng)));
    ids.push_back(params.add("b2", Matrix::Constant(1, 1, 0.1)));
    std::normal_distribution<double> normal;
    input = Matrix(p, batch);
    for (Eigen::Index i = 0; i < input.size(); ++i) input.data()[i] = normal(rng);
    target = Matrix(1, batch);
    for (Eigen::Index i = 0; i < batch; ++i) target(0, i) = normal(rng);
    for (Eigen::Index c = 0; c < batch; c += 2) arm_columns.push_back(c);
  }

  double loss(bool backward) {
    Tape tape(params);
    Rng rng = derive_rng(dropout_seed, "dropout");
    NodeId h = tape.affine(ids[0], ids[1], tape.input(input));
    h = tape.activation(ActivationKind::kRelu, h);
    h = tape.dropout(h, rate, true, rng);
    h = tape.masked_affine(ids[2], ids[3], h, arm_columns);
    h = tape.masked_activation(ActivationKind::kRelu, h, arm_columns);
    const NodeId out = tape.affine(ids[4], ids[5], h);
    const NodeId l = tape.mean_squared_error(out, target);
    if (backward) tape.backward(l);
    return tape.value(l)(0, 0);
  }
};

TEST(GradientCheckTest, CentralDifferences) {
  const double h = 1e-5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GradientProblem problem(seed);
    problem.loss(true);
    for (ParamId id : problem.ids) {
      const Matrix analytic = problem.params.grad(id);
      for (Eigen::Index i = 0; i < analytic.size(); ++i) {
        double& v = problem.params.mutable_value(id).data()[i];
        const double saved = v;
        v = saved + h;
        const double up = problem.loss(false);
        v = saved - h;
        const double down = problem.loss(false);
        v = saved;
        const double numeric = (up - down) / (2 * h);
        const double a = analytic.data()[i];
        EXPECT_LE(std::fabs(a - numeric) / std::max(1.0, std::fabs(a)), 1e-4)
            << "seed " << seed << " param " << problem.params.name(id) << "[" << i << "]";
      }
    }
  }
}

TEST(DropoutTest, DegenerateAndInference) {
  ParamStore params;
  Tape tape(params);
  Rng rng(2);
  const Matrix x = Matrix::Random(4, 3);
  const NodeId in = tape.input(x);
  EXPECT_EQ(tape.value(tape.dropout(in, 0.0, true, rng)), x);
  EXPECT_EQ(tape.value(tape.dropout(in, 0.5, false, rng)), x);
  EXPECT_THROW(tape.dropout(in, 1.0, true, rng), ConfigError);
  EXPECT_THROW(tape.dropout(in, -0.1, true, rng), ConfigError);
}

TEST(DropoutTest, PreservesExpectation) {
  ParamStore params;
  Tape tape(params);
  Rng rng(3);
  const Matrix x = Matrix::Constant(1, 100000, 2.0);
  const Matrix y = tape.value(tape.dropout(tape.input(x), 0.25, true, rng));
  EXPECT_NEAR(y.mean(), 2.0, 0.02);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    ASSERT_TRUE(y(0, i) == 0.0 || std::fabs(y(0, i) - 2.0 / 0.75) < 1e-12);
  }
}

TEST(OptimizerTest, SgdHandStep) {
  ParamStore params;
  const ParamId t = params.add("t", M({{1.0}}));
  params.mutable_grad(t)(0, 0) = 1.0;
  Optimizer sgd({OptimizerKind::kSgd, 0.1, 0.0}, params);
  sgd.step(params);
  EXPECT_DOUBLE_EQ(params.value(t)(0, 0), 0.9);
}

TEST(OptimizerTest, DecayShrinksAndZeroGradientIsFixedPoint) {
  ParamStore params;
  const ParamId t = params.add("t", M({{2.0}}));
  const ParamId s = params.add("s", M({{-1.5}}));
  params.mutable_grad(t).setZero();
  params.mutable_grad(s).setZero();
  Optimizer decay({OptimizerKind::kSgd, 0.1, 0.5}, params);
  decay.step(params);
  EXPECT_DOUBLE_EQ(params.value(t)(0, 0), 2.0 - 0.1 * 0.5 * 2.0);

  ParamStore still;
  const ParamId u = still.add("u", M({{0.7, -0.3}}));
  for (OptimizerKind kind : {OptimizerKind::kSgd, OptimizerKind::kAdam}) {
    still.mutable_grad(u).setZero();
    Optimizer opt({kind, 0.03, 0.0}, still);
    opt.step(still);
    EXPECT_EQ(still.value(u), M({{0.7, -0.3}}));
  }
}

TEST(OptimizerTest, AdamMatchesHandRecurrence) {
  ParamStore params;
  const ParamId t = params.add("t", M({{0.5}}));
  OptimizerConfig config{OptimizerKind::kAdam, 0.01, 0.0};
  Optimizer adam(config, params);
  double theta = 0.5, m = 0, v = 0;
  const double grads[] = {0.3, -0.1, 0.7, 0.2};
  for (int step = 1; step <= 4; ++step) {
    params.zero_grad();
    params.mutable_grad(t)(0, 0) = grads[step - 1];
    adam.step(params);
    const double g = grads[step - 1];
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1 - std::pow(0.9, step));
    const double vh = v / (1 - std::pow(0.999, step));
    theta -= 0.01 * mh / (std::sqrt(vh) + 1e-8);
    EXPECT_NEAR(params.value(t)(0, 0), theta, 1e-15);
  }
}

TEST(OptimizerTest, RejectsBadLearningRate) {
  OptimizerConfig config;
  config.learning_rate = 0.0;
  EXPECT_THROW(config.validate(), ConfigError);
  ParamStore params;
  EXPECT_THROW(Optimizer(config, params), ConfigError);
}

TEST(OptimizerTest, SgdDecreasesRegressionLoss) {
  ParamStore params;
  Rng rng(8);
  const ParamId w = params.add("w", glorot_uniform(1, 4, rng));
  const ParamId b = params.add("b", Matrix::Zero(1, 1));
  Matrix x(4, 64);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  const Matrix y = M({{1.0, -2.0, 0.5, 3.0}}) * x + Matrix::Constant(1, 64, 0.7);
  Optimizer sgd({OptimizerKind::kSgd, 0.003, 0.0}, params);
  double previous = 1e300;
  for (int step = 0; step < 50; ++step) {
    params.zero_grad();
    Tape tape(params);
    const NodeId loss = tape.mean_squared_error(tape.affine(w, b, tape.input(x)), y);
    tape.backward(loss);
    const double value = tape.value(loss)(0, 0);
    EXPECT_LT(value, previous + 1e-12);
    previous = value;
    sgd.step(params);
  }
}

TEST(ParamStoreTest, GlorotBoundsAndDeterminism) {
  Rng a(5), b(5);
  const Matrix w = glorot_uniform(8, 4, a);
  EXPECT_EQ(w, glorot_uniform(8, 4, b));
  EXPECT_LE(w.cwiseAbs().maxCoeff(), std::sqrt(6.0 / 12.0));
  ParamStore params;
  params.add("x", w);
  EXPECT_EQ(params.scalar_count(), 32u);
  EXPECT_TRUE(params.find("x").has_value());
  EXPECT_FALSE(params.find("y").has_value());
}

TEST(CheckpointTest, RoundTripIsExact) {
  ParamStore params;
  Rng rng(6);
  params.add("base.0.weight", glorot_uniform(3, 2, rng));
  params.add("base.0.bias", Matrix::Constant(3, 1, 1.0 / 3.0));
  std::stringstream buffer;
  save_checkpoint(buffer, params, {{"model", "ncore"}, {"k", "2"}});
  const Checkpoint loaded = load_checkpoint(buffer);
  ASSERT_EQ(loaded.params.size(), 2u);
  EXPECT_EQ(loaded.metadata.at("k"), "2");
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(loaded.params.name(ParamId{i}), params.name(ParamId{i}));
    EXPECT_EQ(loaded.params.value(ParamId{i}), params.value(ParamId{i}));
  }
}

TEST(CheckpointTest, MalformedInputReportsLine) {
  std::stringstream bad("ncore-checkpoint 1\nparam w 1 2\n0.5 oops\nend\n");
  try {
    load_checkpoint(bad, "bad.ckpt");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::stringstream version("ncore-checkpoint 9\nend\n");
  EXPECT_THROW(load_checkpoint(version), ParseError);
}

}  // namespace
}  // namespace ncore::diffcore
