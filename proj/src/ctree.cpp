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

#include "shapcond/ctree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "shapcond/error.hpp"
#include "shapcond/special.hpp"

namespace shapcond {
namespace {

struct Builder {
  const Matrix& x;
  std::vector<int> covariates;
  std::vector<int> responses;
  CtreeOptions options;
  std::vector<CtreeNode> nodes;

  // Smallest Bonferroni-adjusted p-value and the feature position achieving it.
  std::pair<double, int> select(const std::vector<Index>& rows) const {
    const Index n = static_cast<Index>(rows.size());
    const double dn = static_cast<double>(n);
    const double q = static_cast<double>(responses.size());
    const double c = static_cast<double>(covariates.size());
    double best_p = 1.0;
    int best_pos = -1;
    for (std::size_t a = 0; a < covariates.size(); ++a) {
      const int j = covariates[a];
      double mx = 0.0;
      for (Index i : rows) mx += x(i, j);
      mx /= dn;
      double sxx = 0.0;
      for (Index i : rows) sxx += (x(i, j) - mx) * (x(i, j) - mx);
      if (sxx <= 0.0) continue;
      double max_z = 0.0;
      for (int d : responses) {
        double my = 0.0;
        for (Index i : rows) my += x(i, d);
        my /= dn;
        double syy = 0.0, sxy = 0.0;
        for (Index i : rows) {
          syy += (x(i, d) - my) * (x(i, d) - my);
          sxy += (x(i, j) - mx) * (x(i, d) - my);
        }
        if (syy <= 0.0) continue;
        const double r = sxy / std::sqrt(sxx * syy);
        max_z = std::max(max_z, std::abs(r) * std::sqrt(dn - 1.0));
      }
      const double p = std::min(1.0, c * q * 2.0 * norm_cdf(-max_z));
      if (best_pos < 0 || p < best_p) {
        best_p = p;
        best_pos = static_cast<int>(a);
      }
    }
    return {best_p, best_pos};
  }

  // Best cut on covariate j; returns false when no admissible cut exists.
  bool best_cut(const std::vector<Index>& rows, int j, double* split) const {
    const Index n = static_cast<Index>(rows.size());
    const Index q = static_cast<Index>(responses.size());
    std::vector<Index> order = rows;
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return x(a, j) < x(b, j); });
    Matrix y(n, q);
    for (Index i = 0; i < n; ++i) {
      for (Index d = 0; d < q; ++d) y(i, d) = x(order[static_cast<std::size_t>(i)], responses[static_cast<std::size_t>(d)]);
    }
    const Vector mean = y.colwise().mean().transpose();
    const Matrix centred = y.rowwise() - mean.transpose();
    Matrix cov = centred.transpose() * centred / static_cast<double>(n);
    cov.diagonal().array() += 1e-10 * std::max(1.0, cov.diagonal().maxCoeff());
    const Matrix cov_inv = cov.ldlt().solve(Matrix::Identity(q, q));
    Vector running = Vector::Zero(q);
    double best = -1.0;
    const double dn = static_cast<double>(n);
    for (Index i = 0; i + 1 < n; ++i) {
      running += centred.row(i).transpose();
      const Index left = i + 1;
      const Index right = n - left;
      const double xl = x(order[static_cast<std::size_t>(i)], j);
      const double xr = x(order[static_cast<std::size_t>(i + 1)], j);
      if (left < options.minbucket || right < options.minbucket || !(xl < xr)) continue;
      const double stat = (dn - 1.0) / (static_cast<double>(left) * static_cast<double>(right)) *
                          running.dot(cov_inv * running);
      if (stat > best) {
        best = stat;
        *split = 0.5 * (xl + xr);
      }
    }
    return best >= 0.0;
  }

  int grow(std::vector<Index> rows) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (static_cast<Index>(rows.size()) < 2 * options.minbucket) {
      nodes[static_cast<std::size_t>(id)].rows = std::move(rows);
      return id;
    }
    const auto [p, pos] = select(rows);
    double split = 0.0;
    if (pos < 0 || p > options.alpha || !best_cut(rows, covariates[static_cast<std::size_t>(pos)], &split)) {
      nodes[static_cast<std::size_t>(id)].p_value = pos < 0 ? 1.0 : p;
      nodes[static_cast<std::size_t>(id)].rows = std::move(rows);
      return id;
    }
    const int j = covariates[static_cast<std::size_t>(pos)];
    std::vector<Index> left, right;
    for (Index i : rows) (x(i, j) <= split ? left : right).push_back(i);
    {
      CtreeNode& node = nodes[static_cast<std::size_t>(id)];
      node.feature = j;
      node.feature_pos = pos;
      node.split = split;
      node.p_value = p;
    }
    const int l = grow(std::move(left));
    const int r = grow(std::move(right));
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }
};

}  // namespace

int CtreeModel::leaf_for(const Vector& x_s) const {
  if (x_s.size() != coalition.size()) throw ShapeMismatchError("ctree: conditioning vector has the wrong length");
  int id = 0;
  while (!nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const CtreeNode& node = nodes[static_cast<std::size_t>(id)];
    id = x_s(node.feature_pos) <= node.split ? node.left : node.right;
  }
  return id;
}

int CtreeModel::num_leaves() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const CtreeNode& n) { return n.is_leaf(); }));
}

CtreeModel ctree_fit(const Matrix& x, Coalition s, const CtreeOptions& options) {
  const int m = static_cast<int>(x.cols());
  if (s.empty() || s == Coalition::full(m)) {
    throw DomainError("ctree_fit needs a coalition that is neither empty nor full");
  }
  if (x.rows() < 1) throw InsufficientDataError("ctree_fit needs training rows");
  Builder builder{x, s.features(), s.complement(m).features(), options, {}};
  std::vector<Index> rows(static_cast<std::size_t>(x.rows()));
  std::iota(rows.begin(), rows.end(), Index{0});
  builder.grow(std::move(rows));
  CtreeModel model;
  model.coalition = s;
  model.num_features = m;
  model.nodes = std::move(builder.nodes);
  return model;
}

FrequencySample ctree_draw(const CtreeModel& model, const Vector& x_s, Index k, Rng& rng) {
  const CtreeNode& leaf = model.nodes[static_cast<std::size_t>(model.leaf_for(x_s))];
  std::map<Index, double> counts;
  for (Index i = 0; i < k; ++i) {
    counts[leaf.rows[rng.below(leaf.rows.size())]] += 1.0;
  }
  FrequencySample out;
  out.rows.reserve(counts.size());
  out.weights.resize(static_cast<Index>(counts.size()));
  Index pos = 0;
  for (const auto& [row, count] : counts) {
    out.rows.push_back(row);
    out.weights(pos++) = count;
  }
  return out;
}

}  // namespace shapcond
