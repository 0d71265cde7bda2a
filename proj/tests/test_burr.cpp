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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "shapcond/burr.hpp"
#include "shapcond/rng.hpp"

using namespace shapcond;

namespace {

BurrParams two_dim(double kappa) {
  BurrParams p;
  p.kappa = kappa;
  p.b = Eigen::Vector2d(5.0, 4.0);
  p.r = Eigen::Vector2d(4.0, 3.0);
  return p;
}

}  // namespace

TEST(BurrConditional, EmptyCoalitionIsIdentity) {
  const BurrParams p = two_dim(2.0);
  const BurrParams c = burr_conditional(p, Coalition(), Vector(0));
  EXPECT_EQ(c.kappa, p.kappa);
  EXPECT_EQ(c.b, p.b);
  EXPECT_EQ(c.r, p.r);
}

TEST(BurrConditional, TwoDimensionalUpdate) {
  const BurrParams p = two_dim(2.0);
  const double x2 = 0.7;
  const BurrParams c = burr_conditional(p, Coalition::of({1}), Vector::Constant(1, x2));
  EXPECT_DOUBLE_EQ(c.kappa, 3.0);
  EXPECT_NEAR(c.r(0), 4.0 / (1.0 + 3.0 * std::pow(x2, 4.0)), 1e-14);
  EXPECT_EQ(c.b(0), 5.0);
}

TEST(BurrConditional, ZeroLimit) {
  const BurrParams p = two_dim(2.0);
  const BurrParams c = burr_conditional(p, Coalition::of({1}), Vector::Constant(1, 1e-9));
  EXPECT_NEAR(c.r(0), 4.0, 1e-12);
}

TEST(BurrConditional, DensityRatioMatchesQuadrature) {
  const BurrParams p = two_dim(1.5);
  const double x2 = 0.6;
  const auto joint = [&](double x1) { return std::exp(burr_log_density(p, Eigen::Vector2d(x1, x2))); };
  const double marginal = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      joint, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-14);
  const BurrParams c = burr_conditional(p, Coalition::of({1}), Vector::Constant(1, x2));
  for (double x1 : {0.2, 0.5, 0.8, 1.3}) {
    EXPECT_NEAR(std::exp(burr_log_density(c, Vector::Constant(1, x1))), joint(x1) / marginal, 1e-6);
  }
}

TEST(BurrSample, MedianSurvival) {
  BurrParams p = two_dim(1.0);
  // sum_j r_j x_j^b_j = 1 with equal shares.
  const Eigen::Vector2d x(std::pow(0.5 / 4.0, 1.0 / 5.0), std::pow(0.5 / 3.0, 1.0 / 4.0));
  EXPECT_NEAR(burr_survival(p, x), 0.5, 1e-14);
  Rng rng(17);
  const Matrix draws = burr_sample(p, 10000, rng);
  int above = 0;
  for (Index i = 0; i < draws.rows(); ++i) above += (draws(i, 0) > x(0) && draws(i, 1) > x(1));
  EXPECT_NEAR(above / 10000.0, 0.5, 0.02);
  EXPECT_GT(draws.minCoeff(), 0.0);
}

TEST(BurrSample, LargerShapeLighterTail) {
  BurrParams light = two_dim(1.0), heavy = two_dim(1.0);
  light.b(0) = 9.0;
  heavy.b(0) = 2.0;
  Rng r1(3), r2(3);
  const Matrix a = burr_sample(light, 5000, r1), b = burr_sample(heavy, 5000, r2);
  EXPECT_LT(a.col(0).maxCoeff(), b.col(0).maxCoeff());
}

TEST(BurrSample, Reproducible) {
  const BurrParams p = two_dim(2.0);
  Rng r1(1), r2(1);
  EXPECT_EQ(burr_sample(p, 5, r1), burr_sample(p, 5, r2));
}
