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
#include "shapcond/gh.hpp"
#include "shapcond/rng.hpp"
#include "test_util.hpp"

using namespace shapcond;

namespace {

GHParams base(int m) {
  GHParams p;
  p.lambda = 1.0;
  p.omega = 1.0;
  p.mu = Vector::Zero(m);
  p.sigma = Matrix::Identity(m, m);
  p.beta = Vector::Zero(m);
  return p;
}

}  // namespace

TEST(GhConditional, SymmetricCollapse) {
  GHParams p = base(3);
  p.omega = 2.0;
  p.mu << 1.0, 2.0, 3.0;
  p.sigma(0, 1) = p.sigma(1, 0) = 0.3;
  const GHStarParams c = gh_conditional(p, Coalition::of({0}), Vector::Constant(1, 1.0));
  EXPECT_NEAR(c.chi, 2.0, 1e-14);
  EXPECT_NEAR(c.psi, 2.0, 1e-14);
  EXPECT_NEAR(c.mu(0), 2.0, 1e-14);
  EXPECT_NEAR(c.mu(1), 3.0, 1e-14);
}

TEST(GhConditional, LambdaShift) {
  const GHStarParams c = gh_conditional(base(2), Coalition::of({1}), Vector::Constant(1, 0.4));
  EXPECT_DOUBLE_EQ(c.lambda, 0.5);
}

TEST(GhConditional, DiagonalSigmaUnchanged) {
  GHParams p = base(3);
  p.sigma.diagonal() << 2.0, 3.0, 4.0;
  const GHStarParams c = gh_conditional(p, Coalition::of({1}), Vector::Constant(1, 0.4));
  EXPECT_NEAR(c.sigma(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(c.sigma(1, 1), 4.0, 1e-14);
  EXPECT_NEAR(c.sigma(0, 1), 0.0, 1e-14);
}

TEST(Gig, InverseGaussianMean) {
  Rng rng(21);
  const std::vector<double> w = gig_sample(-0.5, 1.0, 1.0, 10000, rng);
  EXPECT_NEAR(testutil::mean(w), 1.0, 0.03);
  EXPECT_NEAR(gig_mean(-0.5, 1.0, 1.0), 1.0, 1e-12);
}

TEST(Gig, ReciprocalIdentity) {
  Rng r1(2), r2(3);
  const double lambda = 1.7, chi = 0.8, psi = 2.5;
  std::vector<double> w = gig_sample(lambda, chi, psi, 10000, r1);
  for (double& x : w) x = 1.0 / x;
  const std::vector<double> v = gig_sample(-lambda, psi, chi, 10000, r2);
  EXPECT_LT(testutil::ks_statistic(w, v), 0.05);
}

TEST(Gig, RejectsBadParameters) {
  Rng rng(1);
  EXPECT_THROW(gig_draw(1.0, 0.0, 1.0, rng), DomainError);
  EXPECT_THROW(gig_draw(1.0, 1.0, -1.0, rng), DomainError);
}

TEST(GhSample, GaussianLimitCovariance) {
  GHParams p = base(2);
  p.omega = 1e4;
  p.sigma << 1.0, 0.6, 0.6, 2.0;
  Rng rng(5);
  const Matrix x = gh_sample(to_star(p), 100000, rng);
  const Matrix c = x.rowwise() - x.colwise().mean();
  const Matrix cov = c.transpose() * c / static_cast<double>(x.rows() - 1);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) EXPECT_NEAR(cov(i, j), p.sigma(i, j), 0.05 * p.sigma(i, i));
  }
}

TEST(GhSample, MixtureMean) {
  GHParams p = base(2);
  p.lambda = 2.0;
  p.mu << 1.0, -1.0;
  p.beta << 0.5, 0.2;
  Rng rng(6);
  const Matrix x = gh_sample(to_star(p), 100000, rng);
  const double ew = gig_mean(p.lambda, p.omega, p.omega);
  EXPECT_NEAR(x.col(0).mean(), 1.0 + 0.5 * ew, 0.03);
  EXPECT_NEAR(x.col(1).mean(), -1.0 + 0.2 * ew, 0.03);
}

TEST(GhSample, Reproducible) {
  Rng r1(9), r2(9);
  EXPECT_EQ(gh_sample(to_star(base(3)), 10, r1), gh_sample(to_star(base(3)), 10, r2));
}

TEST(GhDensity, IntegratesToOneInOneDimension) {
  GHParams p = base(1);
  p.lambda = -0.7;
  p.beta(0) = 0.4;
  double s = 0.0;
  const double h = 1e-3;
  for (double x = -40.0; x < 40.0; x += h) s += std::exp(gh_log_density(p, Vector::Constant(1, x))) * h;
  EXPECT_NEAR(s, 1.0, 1e-4);
}
