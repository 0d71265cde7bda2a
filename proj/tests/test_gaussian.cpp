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

#include "shapcond/coalition.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/rng.hpp"
#include "shapcond/simulation.hpp"

using namespace shapcond;

TEST(GaussianFit, ConstantRows) {
  Matrix x(5, 2);
  x.rowwise() = Eigen::RowVector2d(1.5, -2.0);
  const GaussianParams p = gaussian_fit(x);
  EXPECT_NEAR(p.mu(0), 1.5, 1e-14);
  EXPECT_NEAR(p.mu(1), -2.0, 1e-14);
  EXPECT_LT(p.sigma.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(GaussianFit, TwoPoints) {
  Matrix x(2, 2);
  x << 0, 0, 2, 2;
  const GaussianParams p = gaussian_fit(x);
  EXPECT_NEAR(p.mu(0), 1.0, 1e-14);
  EXPECT_NEAR(p.mu(1), 1.0, 1e-14);
  EXPECT_NEAR(p.sigma(0, 0), 2.0, 1e-6);
  EXPECT_NEAR(p.sigma(0, 1), 2.0, 1e-6);
  EXPECT_NEAR(p.sigma(1, 1), 2.0, 1e-6);
}

TEST(GaussianFit, Ar1Covariance) {
  DataSpec spec;
  spec.rho = 0.5;
  spec.m = 3;
  spec.n_train = 100000;
  spec.n_test = 1;
  const SimData d = gen_gaussian_data(spec, TrueModelSpec{});
  EXPECT_NEAR(gaussian_fit(d.x_train).sigma(0, 1), 0.5, 0.01);
}

TEST(GaussianConditional, IdentityCovariance) {
  GaussianParams p{Vector::Zero(3), Matrix::Identity(3, 3)};
  const GaussianParams c = gaussian_conditional(p, Coalition::of({1}), Vector::Constant(1, 4.0));
  EXPECT_TRUE(c.mu.isZero(1e-14));
  EXPECT_TRUE(c.sigma.isApprox(Matrix::Identity(2, 2)));
}

TEST(GaussianConditional, Bivariate) {
  GaussianParams p{Vector::Zero(2), ar1_covariance(2, 0.5)};
  const GaussianParams c = gaussian_conditional(p, Coalition::of({0}), Vector::Constant(1, 2.0));
  EXPECT_NEAR(c.mu(0), 1.0, 1e-14);
  EXPECT_NEAR(c.sigma(0, 0), 0.75, 1e-14);
}

TEST(GaussianConditional, ConditioningOnTheMean) {
  Vector mu(3);
  mu << 1.0, -2.0, 0.5;
  GaussianParams p{mu, ar1_covariance(3, 0.7)};
  const GaussianParams c = gaussian_conditional(p, Coalition::of({0, 2}), Vector::Map(std::vector<double>{1.0, 0.5}.data(), 2));
  EXPECT_NEAR(c.mu(0), -2.0, 1e-14);
}

TEST(GaussianConditioner, SampleMomentsAndAntithetic) {
  GaussianParams p{Vector::Zero(3), ar1_covariance(3, 0.6)};
  GaussianConditioner c(p, Coalition::of({1}));
  Rng rng(4);
  const Matrix draws = c.sample(Vector::Constant(1, 1.0), 20000, rng, true);
  const Vector expected = c.conditional_mean(Vector::Constant(1, 1.0));
  EXPECT_TRUE(draws.colwise().mean().transpose().isApprox(expected, 1e-12));
  EXPECT_NEAR((draws.row(0) + draws.row(1) - 2.0 * expected.transpose()).norm(), 0.0, 1e-12);
  const Matrix centered = draws.rowwise() - draws.colwise().mean();
  const Matrix cov = centered.transpose() * centered / 19999.0;
  EXPECT_NEAR(cov(0, 0), c.conditional_covariance()(0, 0), 0.03);
}
