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

#include "shapcond/ctree.hpp"
#include "shapcond/rng.hpp"

using namespace shapcond;

TEST(Ctree, IndependentResponseGivesRootLeaf) {
  int root_only = 0;
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(100 + static_cast<std::uint64_t>(rep));
    const Matrix x = sample_std_normal(rng, 300, 3);
    if (ctree_fit(x, Coalition::of({0}), {}).num_leaves() == 1) ++root_only;
  }
  // The split rate is at most alpha = 0.05; allow about one binomial
  // standard error (0.015 at 200 repetitions) of slack.
  EXPECT_GE(root_only, static_cast<int>(0.935 * reps));
}

TEST(Ctree, StepFunctionSplitsNearZero) {
  Rng rng(7);
  Matrix x = sample_std_normal(rng, 1000, 2);
  for (Index i = 0; i < x.rows(); ++i) x(i, 1) = (x(i, 0) > 0.0 ? 3.0 : -3.0) + 0.1 * rng.normal();
  const CtreeModel t = ctree_fit(x, Coalition::of({0}), {});
  ASSERT_FALSE(t.nodes[0].is_leaf());
  EXPECT_EQ(t.nodes[0].feature, 0);
  EXPECT_LT(std::abs(t.nodes[0].split), 0.2);
}

TEST(Ctree, SmallNodeIsLeaf) {
  Rng rng(2);
  const Matrix x = sample_std_normal(rng, 13, 2);
  EXPECT_EQ(ctree_fit(x, Coalition::of({1}), {}).num_leaves(), 1);
}

TEST(CtreeDraw, FrequencyAccounting) {
  Rng rng(5);
  Matrix x = sample_std_normal(rng, 200, 2);
  const CtreeModel t = ctree_fit(x, Coalition::of({0}), {});
  Rng draw_rng(1);
  const FrequencySample f = ctree_draw(t, Vector::Constant(1, 0.3), 1000, draw_rng);
  EXPECT_DOUBLE_EQ(f.weights.sum(), 1000.0);
  const std::size_t leaf_size = t.nodes[static_cast<std::size_t>(t.leaf_for(Vector::Constant(1, 0.3)))].rows.size();
  EXPECT_LE(f.rows.size(), leaf_size);
}

TEST(CtreeDraw, LeafOfOneRow) {
  CtreeModel t;
  t.coalition = Coalition::of({0});
  t.num_features = 2;
  CtreeNode leaf;
  leaf.rows = {4};
  t.nodes.push_back(leaf);
  Rng rng(1);
  const FrequencySample f = ctree_draw(t, Vector::Constant(1, 0.0), 25, rng);
  ASSERT_EQ(f.rows.size(), 1u);
  EXPECT_EQ(f.rows[0], 4);
  EXPECT_DOUBLE_EQ(f.weights(0), 25.0);
}
