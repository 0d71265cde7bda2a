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

#include "shapcond/optimize.hpp"

using namespace shapcond;

TEST(NelderMead, Parabola) {
  const auto r = nelder_mead([](const Vector& x) { return (x(0) - 1.0) * (x(0) - 1.0); }, Vector::Constant(1, 5.0));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.argmin(0), 1.0, 1e-6);
}

TEST(NelderMead, Rosenbrock) {
  Vector x0(2);
  x0 << -1.2, 1.0;
  NelderMeadOptions o;
  o.tol = 1e-12;
  o.max_iter = 20000;
  const auto r = nelder_mead(
      [](const Vector& x) { return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2); }, x0, o);
  EXPECT_NEAR(r.argmin(0), 1.0, 1e-3);
  EXPECT_NEAR(r.argmin(1), 1.0, 1e-3);
}

TEST(NelderMead, ConstantObjective) {
  Vector x0(3);
  x0 << 0.5, -2.0, 4.0;
  const auto r = nelder_mead([](const Vector&) { return 7.0; }, x0);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.argmin.isApprox(x0));
  EXPECT_EQ(r.value, 7.0);
}
