/*
 * Copyright 2026 The shapcond Authors.
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

#include <gtest/gtest.h>

#include <cmath>

#include "shapcond/error.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/shapley.hpp"
#include "shapcond/simulation.hpp"

using namespace shapcond;

namespace {

double corr(const Matrix& x, Index a, Index b) {
  const Vector u = x.col(a).array() - x.col(a).mean();
  const Vector v = x.col(b).array() - x.col(b).mean();
  return u.dot(v) / std::sqrt(u.squaredNorm() * v.squaredNorm());
}

double mean_pairwise_corr(const Matrix& x) {
  double s = 0.0;
  int n = 0;
  for (Index a = 0; a < x.cols(); ++a) {
    for (Index b = a + 1; b < x.cols(); ++b) {
      s += corr(x, a, b);
      ++n;
    }
  }
  return s / n;
}

}  // namespace

TEST(TrueModel, Values) {
  TrueModelSpec lm;
  EXPECT_DOUBLE_EQ(eval_true_model(lm, Vector::Zero(8)), 1.0);
  EXPECT_DOUBLE_EQ(interaction_g(1.0, 2.0), 8.0);
  TrueModelSpec gam;
  gam.name = "gam_all";
  EXPECT_NEAR(eval_true_model(gam, Vector::Zero(8)), 0.4, 1e-14);
  TrueModelSpec some;
  some.name = "lm_some_interactions";
  Vector x = Vector::Zero(8);
  x(0) = 2.0;
  x(1) = 3.0;
  EXPECT_NEAR(eval_true_model(some, x), 1.0 + 0.2 * 2.0 - 0.8 * 3.0 + 0.8 * 6.0, 1e-14);
}

TEST(TrueModel, DimensionErrors) {
  TrueModelSpec lm;
  EXPECT_THROW(eval_true_model(lm, Vector::Zero(9)), InvalidDimensionError);
  lm.name = "lm_numerous";
  EXPECT_THROW(eval_true_model(lm, Vector::Zero(6)), InvalidDimensionError);
  lm.name = "nope";
  EXPECT_THROW(normalize_model_name(lm.name), ConfigError);
}

TEST(GaussianData, Correlations) {
  DataSpec spec;
  spec.rho = 0.0;
  spec.n_train = 20000;
  const SimData d0 = gen_gaussian_data(spec, TrueModelSpec{});
  for (Index a = 0; a < 8; ++a) {
    for (Index b = a + 1; b < 8; ++b) EXPECT_NEAR(corr(d0.x_train, a, b), 0.0, 0.03);
  }
  spec.rho = 0.9;
  spec.n_train = 20000;
  const SimData d9 = gen_gaussian_data(spec, TrueModelSpec{});
  EXPECT_NEAR(corr(d9.x_train, 0, 7), std::pow(0.9, 7), 0.03);
  EXPECT_NEAR(corr(d9.x_train, 2, 3), 0.9, 0.05);
}

TEST(GaussianData, ReproducibleAndValidated) {
  DataSpec spec;
  spec.rho = 0.4;
  const SimData a = gen_gaussian_data(spec, TrueModelSpec{}), b = gen_gaussian_data(spec, TrueModelSpec{});
  EXPECT_EQ(a.x_train, b.x_train);
  EXPECT_EQ(a.y_test, b.y_test);
  spec.rho = 1.0;
  EXPECT_THROW(gen_gaussian_data(spec, TrueModelSpec{}), ConfigError);
}

TEST(BurrData, PositiveAndMonotoneInKappa) {
  DataSpec spec;
  spec.family = DataFamily::kBurr;
  spec.n_train = 5000;
  spec.kappa = 1.0;
  const SimData d1 = gen_burr_data(spec, TrueModelSpec{});
  spec.kappa = 3.0;
  const SimData d3 = gen_burr_data(spec, TrueModelSpec{});
  EXPECT_GT(d1.x_train.minCoeff(), 0.0);
  EXPECT_GT(mean_pairwise_corr(d1.x_train), mean_pairwise_corr(d3.x_train));
}

TEST(PredictiveModel, LmFormulaCoefficients) {
  DataSpec spec;
  const TrueModelSpec model;
  const SimData d = gen_gaussian_data(spec, model);
  auto f = fit_predictive_model(PredictiveKind::kLmFormula, model, d.x_train, d.y_train);
  const auto* lin = dynamic_cast<const TermLinearModel*>(f.get());
  ASSERT_NE(lin, nullptr);
  EXPECT_NEAR(lin->intercept(), 1.0, 0.1);
  for (Index j = 0; j < 8; ++j) EXPECT_NEAR(lin->coefficients()(j), model.beta[static_cast<std::size_t>(j + 1)], 0.1);
}

TEST(PredictiveModel, OracleBasisOnGamAll) {
  DataSpec spec;
  spec.rho = 0.5;
  spec.n_train = 5000;
  spec.n_test = 2000;
  TrueModelSpec model;
  model.name = "gam_all";
  const SimData d = gen_gaussian_data(spec, model);
  auto f = fit_predictive_model(PredictiveKind::kOracleBasisLm, model, d.x_train, d.y_train);
  EXPECT_LE((f->predict(d.x_test) - d.y_test).squaredNorm() / 2000.0, 1.15);
}

TEST(PredictiveModel, CartIsFinite) {
  DataSpec spec;
  spec.n_train = 300;
  const TrueModelSpec model;
  const SimData d = gen_gaussian_data(spec, model);
  auto f = fit_predictive_model(PredictiveKind::kCart, model, d.x_train, d.y_train);
  EXPECT_TRUE(f->predict(d.x_test * 100.0).allFinite());
}

TEST(Oracle, ConstantModel) {
  class Constant : public PredictiveModel {
   public:
    Vector predict(const Matrix& x) const override { return Vector::Constant(x.rows(), 4.0); }
    nlohmann::json summary() const override { return {}; }
  };
  DataSpec spec;
  spec.m = 3;
  spec.n_test = 3;
  const SimData d = gen_gaussian_data(spec, TrueModelSpec{});
  const OracleResult r = true_shapley_oracle(Constant(), gaussian_data_params(spec), d.x_test, 1000, 4.0, 1);
  EXPECT_TRUE(r.phi.row(0).isApprox(Vector::Constant(3, 4.0).transpose(), 1e-6));
  EXPECT_LT(r.phi.bottomRows(3).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Oracle, LinearGaussianClosedForm) {
  DataSpec spec;
  spec.rho = 0.6;
  spec.m = 4;
  spec.n_test = 5;
  TrueModelSpec model;
  model.noise_sd = 0.0;
  const SimData d = gen_gaussian_data(spec, model);
  auto f = fit_predictive_model(PredictiveKind::kLmFormula, model, d.x_train, d.y_train);
  const auto* lin = dynamic_cast<const TermLinearModel*>(f.get());
  const GaussianParams p = gaussian_data_params(spec);
  const Index k = 10000;
  const OracleResult r = true_shapley_oracle(*f, p, d.x_test, k, 1.0, 3);
  const Matrix closed = linear_gaussian_v(lin->intercept(), lin->coefficients(), p, d.x_test, 1.0);
  const auto all = enumerate_coalitions(4);
  for (std::size_t c = 1; c + 1 < all.size(); ++c) {
    GaussianConditioner cond(p, all[c]);
    const Vector b = subvector(lin->coefficients(), cond.unobserved());
    // Antithetic pairs make the estimate exact for an affine f, so the plain
    // Monte Carlo standard error is a loose bound.
    const double se = std::sqrt(b.dot(cond.conditional_covariance() * b) / static_cast<double>(k));
    for (Index i = 0; i < 5; ++i) EXPECT_NEAR(r.v(static_cast<Index>(c), i), closed(static_cast<Index>(c), i), 3.0 * se + 1e-12);
  }
}

TEST(Oracle, IndependentLinearClosedForm) {
  DataSpec spec;
  spec.rho = 0.0;
  spec.n_test = 5;
  TrueModelSpec model;
  const SimData d = gen_gaussian_data(spec, model);
  auto f = fit_predictive_model(PredictiveKind::kLmFormula, model, d.x_train, d.y_train);
  const auto* lin = dynamic_cast<const TermLinearModel*>(f.get());
  const OracleResult r = true_shapley_oracle(*f, gaussian_data_params(spec), d.x_test, 10000, lin->intercept(), 5);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 8; ++j) EXPECT_NEAR(r.phi(j + 1, i), lin->coefficients()(j) * d.x_test(i, j), 0.02);
  }
}

TEST(Metrics, Mae) {
  Matrix a = Matrix::Zero(9, 250);
  EXPECT_EQ(mae_metric(a, a).overall, 0.0);
  Matrix b = a;
  b(3, 17) = 1.0;
  EXPECT_NEAR(mae_metric(a, b).overall, 5e-4, 1e-15);
  Matrix t(3, 2), h(3, 2);
  t << 9, 9, 1, 2, 3, 4;
  h << 0, 0, 1.5, 2, 2, 5;
  // Observation 1: (0.5 + 1) / 2; observation 2: (0 + 1) / 2.
  const MaeResult r = mae_metric(t, h);
  EXPECT_DOUBLE_EQ(r.per_observation(0), 0.75);
  EXPECT_DOUBLE_EQ(r.per_observation(1), 0.5);
  EXPECT_DOUBLE_EQ(r.overall, 0.625);
  EXPECT_THROW(mae_metric(t, Matrix::Zero(2, 2)), ShapeMismatchError);
}

TEST(Metrics, MseV) {
  const Vector f = Eigen::Vector3d(1.0, 2.0, 3.0);
  Matrix v = f.transpose().replicate(6, 1);
  EXPECT_EQ(mse_v_metric(f, v), 0.0);
  EXPECT_DOUBLE_EQ(mse_v_metric(f, v.array() - 1.0), 1.0);
  Matrix v2(2, 1);
  v2 << 1.0, 4.0;
  // ((2 - 1)^2 + (2 - 4)^2) / 2.
  EXPECT_DOUBLE_EQ(mse_v_metric(Vector::Constant(1, 2.0), v2), 2.5);
  EXPECT_THROW(mse_v_metric(f, Matrix::Zero(5, 3)), ShapeMismatchError);
}

TEST(Metrics, Spearman) {
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {10, 20, 30, 40}), 1.0);
  EXPECT_DOUBLE_EQ(spearman({1, 2, 3, 4}, {4, 3, 2, 1}), -1.0);
  EXPECT_NEAR(spearman({1, 2, 2, 3}, {1, 2, 3, 4}), 0.9486832980505138, 1e-12);
}
