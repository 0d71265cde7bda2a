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

#include "shapcond/error.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/regression.hpp"
#include "shapcond/shapley.hpp"
#include "shapcond/simulation.hpp"

using namespace shapcond;

namespace {

SimData data(double rho, int m, Index n_train, Index n_test, std::uint64_t seed) {
  DataSpec spec;
  spec.rho = rho;
  spec.m = m;
  spec.n_train = n_train;
  spec.n_test = n_test;
  spec.seed = seed;
  return gen_gaussian_data(spec, TrueModelSpec{});
}

}  // namespace

TEST(Augment, FixtureRows) {
  Matrix x(2, 3);
  x << 11, 12, 13, 21, 22, 23;
  const AugmentedDataset aug = build_augmented(x, Eigen::Vector2d(100.0, 200.0));
  Matrix expected(12, 6);
  // clang-format off
  expected << 11,  0,  0, 0, 1, 1,
               0, 12,  0, 1, 0, 1,
               0,  0, 13, 1, 1, 0,
              11, 12,  0, 0, 0, 1,
              11,  0, 13, 0, 1, 0,
               0, 12, 13, 1, 0, 0,
              21,  0,  0, 0, 1, 1,
               0, 22,  0, 1, 0, 1,
               0,  0, 23, 1, 1, 0,
              21, 22,  0, 0, 0, 1,
              21,  0, 23, 0, 1, 0,
               0, 22, 23, 1, 0, 0;
  // clang-format on
  EXPECT_EQ(aug.x, expected);
  for (Index r = 0; r < 12; ++r) EXPECT_EQ(aug.z(r), r < 6 ? 100.0 : 200.0);
  Vector row(6);
  row << 11, 12, 0, 0, 0, 1;
  EXPECT_EQ(augment(x.row(0).transpose(), Coalition::of({0, 1})), row);
}

TEST(Augment, RowCountAndGuard) {
  const Matrix x = Matrix::Zero(1000, 8);
  EXPECT_EQ(build_augmented(x, Vector::Zero(1000)).num_rows(), 254000);
  EXPECT_THROW(build_augmented(x, Vector::Zero(1000), 253999), MemoryGuardError);
}

TEST(Separate, OneModelPerCoalition) {
  const SimData d = data(0.2, 3, 100, 5, 1);
  const SeparateModelSet s = fit_separate(regressor_spec_from_name("lm"), d.x_train, d.y_train);
  EXPECT_EQ(s.size(), 6u);
}

TEST(Separate, ConstantResponse) {
  const SimData d = data(0.2, 3, 100, 5, 1);
  const SeparateModelSet s = fit_separate(regressor_spec_from_name("cart"), d.x_train, Vector::Constant(100, 3.0));
  const Matrix v = predict_v(s, d.x_test, Vector::Constant(5, 3.0), 3.0);
  EXPECT_TRUE((v.array() == 3.0).all());
}

TEST(Separate, LinearGaussianClosedForm) {
  const int m = 4;
  const SimData d = data(0.5, m, 80000, 50, 2);
  const Vector beta = Eigen::Vector4d(1.0, -1.0, 0.5, 2.0);
  const Vector z = (d.x_train * beta).array() + 0.5;
  const Vector f_test = (d.x_test * beta).array() + 0.5;
  const double phi0 = z.mean();
  const SeparateModelSet s = fit_separate(regressor_spec_from_name("lm"), d.x_train, z);
  ContributionMatrix est(m, 50), truth(m, 50);
  est.values = predict_v(s, d.x_test, f_test, phi0);
  DataSpec spec;
  spec.rho = 0.5;
  spec.m = m;
  truth.values = linear_gaussian_v(0.5, beta, gaussian_data_params(spec), d.x_test, phi0);
  const KernelWeightTable w(m);
  EXPECT_LE(mae_metric(solve_shapley_wls(truth, w).phi, solve_shapley_wls(est, w).phi).overall, 0.01);
  // Pinned rows.
  EXPECT_TRUE((est.values.row(0).array() == phi0).all());
  EXPECT_EQ(est.values.row(15).transpose(), f_test);
}

TEST(Surrogate, ConstantResponse) {
  const SimData d = data(0.0, 3, 100, 4, 3);
  const AugmentedDataset aug = build_augmented(d.x_train, Vector::Constant(100, -1.5));
  const SurrogateModel s = fit_surrogate(regressor_spec_from_name("knn"), aug);
  const Matrix v = predict_v(s, d.x_test, Vector::Constant(4, -1.5), -1.5);
  EXPECT_TRUE(v.isApprox(Matrix::Constant(8, 4, -1.5)));
}

TEST(Surrogate, LinearModelInputs) {
  const SimData d = data(0.0, 2, 100, 4, 3);
  const AugmentedDataset aug = build_augmented(d.x_train, d.y_train);
  EXPECT_EQ(aug.x.cols(), 4);
  const SurrogateModel s = fit_surrogate(regressor_spec_from_name("lm"), aug);
  const auto* lin = dynamic_cast<const LinearBasisModel*>(s.model.get());
  ASSERT_NE(lin, nullptr);
  EXPECT_EQ(lin->terms().size(), 4u);
}

TEST(Surrogate, CartFitsFullPattern) {
  const SimData d = data(0.3, 3, 500, 4, 4);
  const Vector z = d.x_train.col(0).array().sin() + d.x_train.col(1).array();
  const AugmentedDataset aug = build_augmented(d.x_train, z);
  const SurrogateModel s = fit_surrogate(regressor_spec_from_name("cart"), aug);
  Matrix full(d.x_train.rows(), 6);
  for (Index i = 0; i < d.x_train.rows(); ++i) full.row(i) = augment(d.x_train.row(i).transpose(), Coalition::full(3)).transpose();
  const Vector p = s.model->predict(full);
  const double r2 = 1.0 - (z - p).squaredNorm() / (z.array() - z.mean()).square().sum();
  EXPECT_GT(r2, 0.9);
}

TEST(Surrogate, AgreesWithSeparateOnIndependentData) {
  const int m = 3;
  const SimData d = data(0.0, m, 1000, 30, 5);
  const Vector beta = Eigen::Vector3d(1.0, -0.5, 0.8);
  const Vector z = d.x_train * beta;
  const Vector f_test = d.x_test * beta;
  const double phi0 = z.mean();
  const SeparateModelSet sep = fit_separate(regressor_spec_from_name("lm"), d.x_train, z);
  const SurrogateModel sur = fit_surrogate(regressor_spec_from_name("lm"), build_augmented(d.x_train, z));
  ContributionMatrix a(m, 30), b(m, 30);
  a.values = predict_v(sep, d.x_test, f_test, phi0);
  b.values = predict_v(sur, d.x_test, f_test, phi0);
  const KernelWeightTable w(m);
  EXPECT_LT(mae_metric(solve_shapley_wls(a, w).phi, solve_shapley_wls(b, w).phi).overall, 0.1);
}
