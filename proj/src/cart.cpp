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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "shapcond/error.hpp"
#include "shapcond/regressor.hpp"

namespace shapcond {
namespace {

using IndexList = std::vector<Index>;

struct Grower {
  const Matrix& x;
  const Vector& z;
  const RegressorSpec& spec;
  double min_gain = 0.0;
  std::vector<CartModel::Node>& nodes;
  std::vector<char> goes_left;

  // sorted[j] lists the node's rows ordered by column j.
  int grow(std::vector<IndexList> sorted, int depth) {
    const IndexList& rows = sorted[0];
    const Index n = static_cast<Index>(rows.size());
    double sum = 0.0, sumsq = 0.0;
    for (Index i : rows) {
      sum += z(i);
      sumsq += z(i) * z(i);
    }
    const double mean = sum / static_cast<double>(n);
    const int id = static_cast<int>(nodes.size());
    CartModel::Node node;
    node.value = mean;
    node.deviance = std::max(0.0, sumsq - sum * mean);
    node.count = n;
    nodes.push_back(node);
    if (n < spec.cart_minsplit || depth >= 30 || node.deviance <= 0.0) return id;

    double best_gain = 0.0;
    int best_feature = -1;
    double best_threshold = 0.0;
    for (Index j = 0; j < x.cols(); ++j) {
      const IndexList& order = sorted[static_cast<std::size_t>(j)];
      double left_sum = 0.0;
      for (Index a = 0; a + 1 < n; ++a) {
        left_sum += z(order[static_cast<std::size_t>(a)]);
        const Index nl = a + 1;
        const Index nr = n - nl;
        if (nl < spec.cart_minbucket) continue;
        if (nr < spec.cart_minbucket) break;
        const double xl = x(order[static_cast<std::size_t>(a)], j);
        const double xr = x(order[static_cast<std::size_t>(a + 1)], j);
        if (!(xl < xr)) continue;
        const double right_sum = sum - left_sum;
        // Reduction in squared error relative to the parent mean.
        const double gain = left_sum * left_sum / static_cast<double>(nl) +
                            right_sum * right_sum / static_cast<double>(nr) - sum * sum / static_cast<double>(n);
        if (gain > best_gain) {
          best_gain = gain;
          best_feature = static_cast<int>(j);
          best_threshold = 0.5 * (xl + xr);
        }
      }
    }
    if (best_feature < 0 || best_gain < min_gain) return id;

    for (Index i : rows) goes_left[static_cast<std::size_t>(i)] = x(i, best_feature) <= best_threshold;
    std::vector<IndexList> left(sorted.size()), right(sorted.size());
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      for (Index i : sorted[j]) (goes_left[static_cast<std::size_t>(i)] ? left[j] : right[j]).push_back(i);
      IndexList().swap(sorted[j]);
    }
    nodes[static_cast<std::size_t>(id)].feature = best_feature;
    nodes[static_cast<std::size_t>(id)].threshold = best_threshold;
    const int l = grow(std::move(left), depth + 1);
    const int r = grow(std::move(right), depth + 1);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }
};

}  // namespace

std::unique_ptr<CartModel> CartModel::grow(const RegressorSpec& spec, const Matrix& x, const Vector& z) {
  spec.validate();
  const Index n = x.rows();
  if (n < 1) throw InsufficientDataError("cart needs training rows");
  if (z.size() != n) throw ShapeMismatchError("cart: response length does not match rows");
  auto model = std::unique_ptr<CartModel>(new CartModel());
  std::vector<IndexList> sorted(static_cast<std::size_t>(std::max<Index>(x.cols(), 1)));
  for (Index j = 0; j < static_cast<Index>(sorted.size()); ++j) {
    IndexList& order = sorted[static_cast<std::size_t>(j)];
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    if (j < x.cols()) {
      std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x(a, j) < x(b, j); });
    }
  }
  const double mean = z.mean();
  const double root_dev = (z.array() - mean).square().sum();
  Grower grower{x, z, spec, spec.cart_cp * root_dev, model->nodes_, std::vector<char>(static_cast<std::size_t>(n), 0)};
  grower.grow(std::move(sorted), 0);
  model->compute_prune_alphas();
  model->train_mse_ = (model->predict(x) - z).squaredNorm() / static_cast<double>(n);
  return model;
}

// prune_alpha_[t] is the smallest penalty at which internal node t becomes a
// leaf under weakest-link pruning.
void CartModel::compute_prune_alphas() {
  const std::size_t count = nodes_.size();
  prune_alpha_.assign(count, std::numeric_limits<double>::infinity());
  std::vector<char> collapsed(count, 0);
  std::vector<double> leaf_dev(count, 0.0);
  std::vector<int> leaves(count, 0);
  double last = 0.0;
  for (;;) {
    // Post-order pass over the current pruned tree.
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> stack = {0};
    std::vector<int> order;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      order.push_back(t);
      const Node& nd = nodes_[static_cast<std::size_t>(t)];
      if (!nd.is_leaf() && !collapsed[static_cast<std::size_t>(t)]) {
        stack.push_back(nd.left);
        stack.push_back(nd.right);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t t = static_cast<std::size_t>(*it);
      const Node& nd = nodes_[t];
      if (nd.is_leaf() || collapsed[t]) {
        leaf_dev[t] = nd.deviance;
        leaves[t] = 1;
      } else {
        leaf_dev[t] = leaf_dev[static_cast<std::size_t>(nd.left)] + leaf_dev[static_cast<std::size_t>(nd.right)];
        leaves[t] = leaves[static_cast<std::size_t>(nd.left)] + leaves[static_cast<std::size_t>(nd.right)];
        const double g = (nd.deviance - leaf_dev[t]) / static_cast<double>(leaves[t] - 1);
        best = std::min(best, g);
      }
    }
    if (!std::isfinite(best)) break;
    best = std::max(best, last);
    last = best;
    const double tol = 1e-12 * std::max(1.0, std::abs(best));
    for (int t : order) {
      const std::size_t u = static_cast<std::size_t>(t);
      const Node& nd = nodes_[u];
      if (nd.is_leaf() || collapsed[u]) continue;
      const double g = (nd.deviance - leaf_dev[u]) / static_cast<double>(leaves[u] - 1);
      if (g <= best + tol) {
        collapsed[u] = 1;
        prune_alpha_[u] = best;
      }
    }
  }
  // A node is pruned no later than any of its ancestors.
  for (std::size_t t = 0; t < count; ++t) {
    const Node& nd = nodes_[t];
    if (nd.is_leaf()) continue;
    for (int c : {nd.left, nd.right}) {
      prune_alpha_[static_cast<std::size_t>(c)] = std::min(prune_alpha_[static_cast<std::size_t>(c)], prune_alpha_[t]);
    }
  }
}

std::vector<double> CartModel::pruning_sequence() const {
  std::vector<double> out;
  for (std::size_t t = 0; t < nodes_.size(); ++t) {
    if (!nodes_[t].is_leaf() && std::isfinite(prune_alpha_[t])) out.push_back(prune_alpha_[t]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void CartModel::prune(double alpha) {
  alpha_ = alpha;
  // Rebuild the node list keeping only the retained part.
  std::vector<Node> kept;
  std::vector<double> kept_alpha;
  struct Pending {
    int old_id;
    int parent;
    bool is_left;
  };
  std::vector<Pending> work = {{0, -1, false}};
  while (!work.empty()) {
    const Pending p = work.back();
    work.pop_back();
    Node nd = nodes_[static_cast<std::size_t>(p.old_id)];
    const double a = prune_alpha_[static_cast<std::size_t>(p.old_id)];
    const int id = static_cast<int>(kept.size());
    const bool collapse = !nd.is_leaf() && a <= alpha;
    const int old_left = nd.left, old_right = nd.right;
    if (collapse || nd.is_leaf()) {
      nd.feature = -1;
      nd.left = nd.right = -1;
    }
    kept.push_back(nd);
    kept_alpha.push_back(collapse || nd.is_leaf() ? std::numeric_limits<double>::infinity() : a);
    if (p.parent >= 0) {
      (p.is_left ? kept[static_cast<std::size_t>(p.parent)].left : kept[static_cast<std::size_t>(p.parent)].right) = id;
    }
    if (!kept.back().is_leaf()) {
      work.push_back({old_right, id, false});
      work.push_back({old_left, id, true});
    }
  }
  nodes_ = std::move(kept);
  prune_alpha_ = std::move(kept_alpha);
}

int CartModel::num_leaves() const {
  return static_cast<int>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

double CartModel::predict_row(const double* row) const {
  int id = 0;
  while (!nodes_[static_cast<std::size_t>(id)].is_leaf()) {
    const Node& nd = nodes_[static_cast<std::size_t>(id)];
    id = row[nd.feature] <= nd.threshold ? nd.left : nd.right;
  }
  return nodes_[static_cast<std::size_t>(id)].value;
}

Vector CartModel::predict(const Matrix& x) const {
  Vector out(x.rows());
  for (Index i = 0; i < x.rows(); ++i) out(i) = predict_row(x.row(i).data());
  return out;
}

std::unique_ptr<CartModel> CartModel::fit(const RegressorSpec& spec, const Matrix& x, const Vector& z) {
  auto model = grow(spec, x, z);
  const std::vector<double> seq = model->pruning_sequence();
  if (seq.empty()) return model;
  // Candidate penalties: geometric midpoints of the full tree's sequence.
  std::vector<double> candidates = {0.0};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double next = i + 1 < seq.size() ? seq[i + 1] : 2.0 * seq[i] + 1.0;
    candidates.push_back(seq[i] > 0.0 ? std::sqrt(seq[i] * next) : 0.5 * next);
  }
  const Index n = x.rows();
  Index cv_n = n;
  std::vector<Index> cv_rows(static_cast<std::size_t>(n));
  std::iota(cv_rows.begin(), cv_rows.end(), Index{0});
  if (spec.cv_max_rows > 0 && n > spec.cv_max_rows) {
    const std::vector<int> rank = fold_assignment(n, static_cast<int>(n), spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Index> picked;
    for (Index i = 0; i < n; ++i) {
      if (rank[static_cast<std::size_t>(i)] < spec.cv_max_rows) picked.push_back(i);
    }
    cv_rows = picked;
    cv_n = static_cast<Index>(cv_rows.size());
  }
  const int folds = static_cast<int>(std::min<Index>(spec.folds, cv_n));
  const std::vector<int> fold = fold_assignment(cv_n, folds, spec.seed);
  std::vector<double> sse(candidates.size(), 0.0);
  for (int f = 0; f < folds; ++f) {
    std::vector<Index> train, test;
    for (Index i = 0; i < cv_n; ++i) (fold[static_cast<std::size_t>(i)] == f ? test : train).push_back(cv_rows[static_cast<std::size_t>(i)]);
    if (train.empty() || test.empty()) continue;
    Matrix xt(static_cast<Index>(train.size()), x.cols());
    Vector zt(static_cast<Index>(train.size()));
    for (std::size_t i = 0; i < train.size(); ++i) {
      xt.row(static_cast<Index>(i)) = x.row(train[i]);
      zt(static_cast<Index>(i)) = z(train[i]);
    }
    Matrix xv(static_cast<Index>(test.size()), x.cols());
    Vector zv(static_cast<Index>(test.size()));
    for (std::size_t i = 0; i < test.size(); ++i) {
      xv.row(static_cast<Index>(i)) = x.row(test[i]);
      zv(static_cast<Index>(i)) = z(test[i]);
    }
    auto inner = grow(spec, xt, zt);
    // Candidates ascend, so prune the same tree progressively.
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      inner->prune(candidates[c]);
      sse[c] += (inner->predict(xv) - zv).squaredNorm();
    }
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < candidates.size(); ++c) {
    if (sse[c] < sse[best] * (1.0 - 1e-12)) best = c;
  }
  model->prune(candidates[best]);
  model->train_mse_ = (model->predict(x) - z).squaredNorm() / static_cast<double>(n);
  return model;
}

nlohmann::json CartModel::summary() const {
  return {{"kind", "cart"}, {"alpha", alpha_}, {"leaves", num_leaves()}, {"train_mse", train_mse_}};
}

}  // namespace shapcond
