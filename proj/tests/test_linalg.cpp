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
#include "shapcond/linalg.hpp"

using namespace shapcond;

TEST(Cholesky, Identity) {
  const Matrix i = Matrix::Identity(3, 3);
  EXPECT_TRUE(cholesky(i).isApprox(i));
}

TEST(Cholesky, HandExample) {
  Matrix a(2, 2);
  a << 4, 2, 2, 3;
  const Matrix l = cholesky(a);
  EXPECT_NEAR(l(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(l(0, 1), 0.0, 1e-14);
  EXPECT_NEAR(l(1, 0), 1.0, 1e-14);
  EXPECT_NEAR(l(1, 1), std::sqrt(2.0), 1e-14);
}

TEST(Cholesky, IndefiniteThrows) {
  Matrix a(2, 2);
  a << 1, 2, 2, 1;
  EXPECT_THROW(cholesky(a), NotPositiveDefiniteError);
}

TEST(Linalg, SubsetsAndMoments) {
  Matrix x(2, 2);
  x << 0, 0, 2, 2;
  const Matrix s = sample_covariance(x);
  EXPECT_NEAR(s(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(s(0, 1), 2.0, 1e-14);
  EXPECT_NEAR(column_means(x)(1), 1.0, 1e-14);
  Vector v(3);
  v << 1, 2, 3;
  const std::vector<int> idx = {2, 0};
  EXPECT_EQ(subvector(v, idx), Vector::Map(std::vector<double>{3, 1}.data(), 2));
}
