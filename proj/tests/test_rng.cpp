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

#include "shapcond/rng.hpp"

using namespace shapcond;

TEST(Rng, SameSeedSameDraws) {
  Rng a(42), b(42);
  EXPECT_EQ(sample_std_normal(a, 2, 2), sample_std_normal(b, 2, 2));
}

TEST(Rng, NormalMean) {
  Rng rng(5);
  const Matrix z = sample_std_normal(rng, 100000, 1);
  EXPECT_NEAR(z.mean(), 0.0, 0.01);
}

TEST(Rng, EmptyMatrix) {
  Rng rng(1);
  EXPECT_EQ(sample_std_normal(rng, 0, 3).rows(), 0);
}

TEST(Rng, SubstreamIgnoresParentState) {
  Rng a(9), b(9);
  for (int i = 0; i < 10; ++i) b();
  Rng ca = a.substream({1, 2}), cb = b.substream({1, 2});
  EXPECT_EQ(ca(), cb());
  EXPECT_NE(a.substream({1, 2})(), a.substream({2, 1})());
}

TEST(Rng, GammaMean) {
  Rng rng(3);
  for (double shape : {0.4, 1.0, 3.5}) {
    double s = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) s += rng.gamma(shape);
    EXPECT_NEAR(s / n, shape, 4.0 * std::sqrt(shape / n));
  }
}
