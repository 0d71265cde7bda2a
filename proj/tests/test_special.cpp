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
#include <numbers>

#include "shapcond/special.hpp"

using namespace shapcond;

TEST(BesselK, HalfIntegerClosedForm) {
  EXPECT_NEAR(bessel_k(0.5, 1.0), std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0), 1e-12);
  EXPECT_NEAR(bessel_k(0.5, 1.0), 0.4610685, 1e-7);
}

TEST(BesselK, SymmetricInOrder) {
  for (double nu : {0.3, 1.0, 2.5, 7.0}) {
    for (double x : {0.05, 1.0, 12.0}) EXPECT_DOUBLE_EQ(bessel_k(-nu, x), bessel_k(nu, x));
  }
}

TEST(BesselK, OrderZeroAtOne) { EXPECT_NEAR(bessel_k(0.0, 1.0), 0.421024, 1e-6); }

TEST(BesselK, LogScaleForLargeArguments) {
  EXPECT_NEAR(log_bessel_k(1.0, 800.0), std::log(std::sqrt(std::numbers::pi / 1600.0)) - 800.0 + std::log1p(3.0 / 6400.0), 1e-6);
}

TEST(Normal, QuantileInvertsCdf) {
  for (double p : {1e-10, 0.01, 0.3, 0.5, 0.8, 0.999}) EXPECT_NEAR(norm_cdf(norm_quantile(p)), p, 1e-12 + 1e-9 * p);
  EXPECT_NEAR(norm_quantile(0.975), 1.959963984540054, 1e-12);
}
