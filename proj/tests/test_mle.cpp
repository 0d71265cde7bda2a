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

#include <Eigen/Cholesky>

#include "shapcond/error.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/gh.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/mle.hpp"
#include "shapcond/rng.hpp"
#include "shapcond/simulation.hpp"

using namespace shapcond;

TEST(Mle, ParameterCounts) {
  EXPECT_EQ(burr_num_parameters(8), 17);
  EXPECT_EQ(gh_num_parameters(8), 54);
  EXPECT_EQ(gh_num_parameters(2), 9);
}

TEST(Mle, PackRoundTrip) {
  BurrParams b;
  b.kappa = 1.7;
  b.b = Eigen::Vector3d(2.0, 3.0, 4.0);
  b.r = Eigen::Vector3d(0.5, 1.5, 2.5);
  const BurrParams b2 = burr_unpack(burr_pack(b), 3);
  EXPECT_NEAR(b2.kappa, 1.7, 1e-12);
  EXPECT_TRUE(b2.r.isApprox(b.r, 1e-12));
  GHParams g;
  g.lambda = -0.3;
  g.omega = 2.0;
  g.mu = Eigen::Vector2d(1.0, 2.0);
  g.sigma = ar1_covariance(2, 0.4);
  g.beta = Eigen::Vector2d(0.1, -0.2);
  const GHParams g2 = gh_unpack(gh_pack(g), 2);
  EXPECT_NEAR(g2.omega, 2.0, 1e-12);
  EXPECT_TRUE(g2.sigma.isApprox(g.sigma, 1e-12));
  EXPECT_EQ(gh_pack(g).size(), gh_num_parameters(2));
}

TEST(Mle, BurrRecoversKappa) {
  DataSpec spec;
  spec.family = DataFamily::kBurr;
  spec.kappa = 2.0;
  spec.n_train = 5000;
  spec.n_test = 1;
  const SimData d = gen_burr_data(spec, TrueModelSpec{});
  const MleResult<BurrParams> fit = burr_mle_fit(d.x_train);
  EXPECT_NEAR(fit.params.kappa, 2.0, 0.3);
  EXPECT_EQ(fit.num_parameters, 17);
}

TEST(Mle, BurrRejectsNonPositiveData) {
  Matrix x = Matrix::Ones(10, 2);
  x(3, 1) = -1.0;
  EXPECT_THROW(burr_mle_fit(x), DomainError);
}

TEST(Mle, GhOnGaussianDataMatchesTheGaussianFit) {
  DataSpec spec;
  spec.rho = 0.5;
  spec.m = 3;
  spec.n_train = 5000;
  spec.n_test = 1;
  const SimData d = gen_gaussian_data(spec, TrueModelSpec{});
  MleOptions o;
  o.starts = 1;
  const MleResult<GHParams> fit = gh_mle_fit(d.x_train, o);
  // The Gaussian is a limit of the family, so the fit should get close to
  // the Gaussian maximum likelihood from either side.
  const Vector mean = column_means(d.x_train);
  const Matrix cov = sample_covariance(d.x_train) * (4999.0 / 5000.0);
  const Eigen::LLT<Matrix> llt(cov);
  const Matrix centered = d.x_train.rowwise() - mean.transpose();
  const double quad = llt.solve(centered.transpose()).cwiseProduct(centered.transpose()).sum();
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double gauss_ll = -0.5 * (5000.0 * (3.0 * std::log(2.0 * M_PI) + log_det) + quad);
  EXPECT_GT(fit.log_likelihood, gauss_ll - 2.0);
  EXPECT_LT(fit.log_likelihood, gauss_ll + 10.0);
  // Draws from the fit reproduce the first two moments of the data.
  Rng rng(4);
  const Matrix draws = gh_sample(to_star(fit.params), 200000, rng);
  EXPECT_LT((column_means(draws) - mean).cwiseAbs().maxCoeff(), 0.03);
  EXPECT_LT((sample_covariance(draws) - cov).cwiseAbs().maxCoeff(), 0.06);
}
