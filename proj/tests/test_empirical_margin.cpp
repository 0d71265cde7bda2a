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

#include <vector>

#include "shapcond/empirical_margin.hpp"

using shapcond::EmpiricalMargin;

TEST(EmpiricalMargin, RankConvention) {
  const std::vector<double> v = {3.0, 1.0, 2.0};
  const EmpiricalMargin m(v);
  EXPECT_DOUBLE_EQ(m.cdf(2.0), 0.5);
  EXPECT_DOUBLE_EQ(m.cdf(-100.0), 0.25);
}

TEST(EmpiricalMargin, QuantileInvertsCdfOnSupport) {
  const std::vector<double> v = {0.3, -1.2, 4.0, 2.2, 0.9};
  const EmpiricalMargin m(v);
  for (double x : v) EXPECT_DOUBLE_EQ(m.quantile(m.cdf(x)), x);
}
