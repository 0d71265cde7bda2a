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

using shapcond::Coalition;

TEST(Coalition, EnumerationSizes) {
  const auto one = shapcond::enumerate_coalitions(1);
  ASSERT_EQ(one.size(), 2u);
  EXPECT_TRUE(one[0].empty());
  EXPECT_EQ(one[1], Coalition::of({0}));
  EXPECT_EQ(shapcond::enumerate_coalitions(3).size(), 8u);
  EXPECT_EQ(shapcond::nontrivial_coalitions(3).size(), 6u);
  EXPECT_EQ(shapcond::enumerate_coalitions(8).size(), 256u);
  EXPECT_EQ(shapcond::nontrivial_coalitions(8).size(), 254u);
}

TEST(Coalition, OrderIsBySizeThenLexicographic) {
  const auto all = shapcond::enumerate_coalitions(3);
  const std::vector<Coalition> expected = {
      Coalition(), Coalition::of({0}), Coalition::of({1}), Coalition::of({2}), Coalition::of({0, 1}),
      Coalition::of({0, 2}), Coalition::of({1, 2}), Coalition::of({0, 1, 2})};
  EXPECT_EQ(all, expected);
}

TEST(Coalition, SetOperations) {
  const Coalition s = Coalition::of({0, 3});
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.complement(4), Coalition::of({1, 2}));
  EXPECT_EQ(s.with(1), Coalition::of({0, 1, 3}));
  EXPECT_EQ(s.features(), (std::vector<int>{0, 3}));
}
