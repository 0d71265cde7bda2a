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

#ifndef SHAPCOND_CTREE_HPP_
#define SHAPCOND_CTREE_HPP_

#include <vector>

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

struct CtreeOptions {
  double alpha = 0.05;
  Index minbucket = 7;
};

struct CtreeNode {
  // -1 marks a leaf.
  int feature = -1;
  // Position of feature within the coalition's member list.
  int feature_pos = -1;
  double split = 0.0;
  double p_value = 1.0;
  int left = -1;
  int right = -1;
  // Training rows; filled for leaves only.
  std::vector<Index> rows;

  bool is_leaf() const { return feature < 0; }
};

// Conditional inference tree for one coalition: x_S is the covariate set and
// x_Sbar the multivariate response. Node 0 is the root.
struct CtreeModel {
  Coalition coalition;
  int num_features = 0;
  std::vector<CtreeNode> nodes;

  // Index of the leaf reached by x_s (values in increasing feature order).
  int leaf_for(const Vector& x_s) const;
  int num_leaves() const;
};

// Recursive partitioning. At each node every feature in S is tested for
// association with each response column through the permutation-standardised
// correlation sqrt(n - 1) * r, which is asymptotically N(0, 1) under
// independence. Two-sided p-values are Bonferroni adjusted over response
// columns and over candidate features. The node becomes a leaf when the
// smallest adjusted p-value exceeds alpha, or when it holds fewer than
// 2 * minbucket rows. Otherwise the chosen feature is cut where the quadratic
// two-sample statistic of the response is largest, subject to both children
// holding at least minbucket rows.
CtreeModel ctree_fit(const Matrix& x, Coalition s, const CtreeOptions& options = {});

// K draws with replacement from the leaf reached by x_s, collapsed to unique
// training rows with their frequencies as weights.
struct FrequencySample {
  std::vector<Index> rows;
  Vector weights;
};
FrequencySample ctree_draw(const CtreeModel& model, const Vector& x_s, Index k, Rng& rng);

}  // namespace shapcond

#endif  // SHAPCOND_CTREE_HPP_
