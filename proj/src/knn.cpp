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
#include <queue>

#include "shapcond/error.hpp"
#include "shapcond/regressor.hpp"

namespace shapcond {

// Static k-d tree over standardised points. Buckets of up to 16 points;
// internal nodes split near the median of the coordinate with the largest
// variance.
struct KnnModel::Tree {
  struct Node {
    Index begin = 0;
    Index end = 0;
    int dim = -1;
    double cut = 0.0;
    int left = -1;
    int right = -1;
  };

  Matrix points;
  std::vector<Index> index;
  std::vector<Node> nodes;

  explicit Tree(Matrix pts) : points(std::move(pts)) {
    index.resize(static_cast<std::size_t>(points.rows()));
    std::iota(index.begin(), index.end(), Index{0});
    if (points.rows() > 0) build(0, points.rows());
  }

  int build(Index begin, Index end) {
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({begin, end, -1, 0.0, -1, -1});
    if (end - begin <= 16) return id;
    int best_dim = 0;
    double best_spread = -1.0;
    const double count = static_cast<double>(end - begin);
    for (Index d = 0; d < points.cols(); ++d) {
      double sum = 0.0, sum2 = 0.0;
      for (Index i = begin; i < end; ++i) {
        const double v = points(index[static_cast<std::size_t>(i)], d);
        sum += v;
        sum2 += v * v;
      }
      const double var = sum2 / count - (sum / count) * (sum / count);
      if (var > best_spread) {
        best_spread = var;
        best_dim = static_cast<int>(d);
      }
    }
    if (best_spread <= 1e-300) return id;
    auto value = [&](Index i) { return points(index[static_cast<std::size_t>(i)], best_dim); };
    Index mid = begin + (end - begin) / 2;
    std::nth_element(index.begin() + begin, index.begin() + mid, index.begin() + end, [&](Index a, Index b) {
      const double va = points(a, best_dim), vb = points(b, best_dim);
      return va < vb || (va == vb && a < b);
    });
    // Move the split to the edge of a run of tied values when that keeps
    // both sides non-trivial, so the two halves are separated by the cut.
    const double at = value(mid);
    const auto split = std::partition(index.begin() + begin, index.begin() + mid,
                                      [&](Index a) { return points(a, best_dim) < at; });
    const Index lower = static_cast<Index>(split - index.begin());
    double cut = at;
    if (lower > begin) {
      double left_max = -std::numeric_limits<double>::infinity();
      for (Index i = begin; i < lower; ++i) left_max = std::max(left_max, value(i));
      if (lower - begin >= (end - begin) / 8 || lower == mid) {
        mid = lower;
        cut = 0.5 * (left_max + at);
      }
    } else {
      const auto upper_it = std::partition(index.begin() + mid, index.begin() + end,
                                           [&](Index a) { return points(a, best_dim) <= at; });
      const Index upper = static_cast<Index>(upper_it - index.begin());
      if (upper < end) {
        double right_min = std::numeric_limits<double>::infinity();
        for (Index i = upper; i < end; ++i) right_min = std::min(right_min, value(i));
        mid = upper;
        cut = 0.5 * (at + right_min);
      }
    }
    nodes[static_cast<std::size_t>(id)].dim = best_dim;
    nodes[static_cast<std::size_t>(id)].cut = cut;
    const int l = build(begin, mid);
    const int r = build(mid, end);
    nodes[static_cast<std::size_t>(id)].left = l;
    nodes[static_cast<std::size_t>(id)].right = r;
    return id;
  }

  using Entry = std::pair<double, Index>;

  // The k nearest training rows to q, nearest first; ties go to the lower row.
  std::vector<Entry> query(const double* q, int k) const {
    std::priority_queue<Entry> heap;
    std::vector<double> off(static_cast<std::size_t>(points.cols()), 0.0);
    if (!nodes.empty()) search(0, q, k, 0.0, off, heap);
    std::vector<Entry> out(heap.size());
    for (std::size_t i = out.size(); i-- > 0;) {
      out[i] = heap.top();
      heap.pop();
    }
    return out;
  }

  // rd is the squared distance from q to the node's cell, accumulated from
  // the per-coordinate offsets in off.
  void search(int id, const double* q, int k, double rd, std::vector<double>& off,
              std::priority_queue<Entry>& heap) const {
    const Node& node = nodes[static_cast<std::size_t>(id)];
    if (node.dim < 0) {
      const Index cols = points.cols();
      for (Index i = node.begin; i < node.end; ++i) {
        const Index row = index[static_cast<std::size_t>(i)];
        const double* p = points.row(row).data();
        const double bound = static_cast<int>(heap.size()) < k ? std::numeric_limits<double>::infinity()
                                                                : heap.top().first;
        double d = 0.0;
        for (Index c = 0; c < cols && d <= bound; ++c) {
          const double t = p[c] - q[c];
          d += t * t;
        }
        const Entry e{d, row};
        if (static_cast<int>(heap.size()) < k) {
          heap.push(e);
        } else if (e < heap.top()) {
          heap.pop();
          heap.push(e);
        }
      }
      return;
    }
    const double diff = q[node.dim] - node.cut;
    const int near = diff < 0.0 ? node.left : node.right;
    const int far = diff < 0.0 ? node.right : node.left;
    search(near, q, k, rd, off, heap);
    const double old = off[static_cast<std::size_t>(node.dim)];
    const double far_rd = rd - old * old + diff * diff;
    if (static_cast<int>(heap.size()) < k || far_rd <= heap.top().first) {
      off[static_cast<std::size_t>(node.dim)] = diff;
      search(far, q, k, far_rd, off, heap);
      off[static_cast<std::size_t>(node.dim)] = old;
    }
  }
};

KnnModel::KnnModel() = default;
KnnModel::~KnnModel() = default;

namespace {

Matrix standardise(const Matrix& x, const Vector& mean, const Vector& scale) {
  Matrix out(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) out(i, j) = (x(i, j) - mean(j)) / scale(j);
  }
  return out;
}

}  // namespace

std::unique_ptr<KnnModel> KnnModel::fit_k(const Matrix& x, const Vector& z, int k) {
  if (x.rows() < 1) throw InsufficientDataError("knn needs training rows");
  if (k < 1) throw ConfigError("knn needs k >= 1");
  auto model = std::unique_ptr<KnnModel>(new KnnModel());
  const Index n = x.rows();
  model->mean_ = column_means(x);
  model->scale_.resize(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double ss = (x.col(j).array() - model->mean_(j)).square().sum();
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    model->scale_(j) = sd > 0.0 ? sd : 1.0;
  }
  model->z_ = z;
  model->k_ = static_cast<int>(std::min<Index>(k, n));
  model->tree_ = std::make_unique<Tree>(standardise(x, model->mean_, model->scale_));
  return model;
}

std::unique_ptr<KnnModel> KnnModel::fit(const RegressorSpec& spec, const Matrix& x, const Vector& z) {
  spec.validate();
  const Index n = x.rows();
  if (n < 2) throw InsufficientDataError("knn needs at least two rows");
  std::vector<int> grid = spec.knn_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  // Cross-validation, optionally on a deterministic subset of rows.
  Index cv_n = n;
  std::vector<Index> cv_rows(static_cast<std::size_t>(n));
  std::iota(cv_rows.begin(), cv_rows.end(), Index{0});
  if (spec.cv_max_rows > 0 && n > spec.cv_max_rows) {
    const std::vector<int> order = fold_assignment(n, static_cast<int>(n), spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Index> picked;
    for (Index i = 0; i < n; ++i) {
      if (order[static_cast<std::size_t>(i)] < spec.cv_max_rows) picked.push_back(i);
    }
    cv_rows = picked;
    cv_n = static_cast<Index>(cv_rows.size());
  }
  const int folds = static_cast<int>(std::min<Index>(spec.folds, cv_n));
  const std::vector<int> fold = fold_assignment(cv_n, folds, spec.seed);
  std::vector<double> sse(grid.size(), 0.0);
  std::vector<Index> counted(grid.size(), 0);
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
    const int kmax = static_cast<int>(std::min<Index>(grid.back(), xt.rows()));
    const auto inner = fit_k(xt, zt, kmax);
    Vector q(x.cols());
    for (Index i : test) {
      for (Index j = 0; j < x.cols(); ++j) q(j) = (x(i, j) - inner->mean_(j)) / inner->scale_(j);
      const auto nn = inner->tree_->query(q.data(), kmax);
      std::vector<double> cum(nn.size() + 1, 0.0);
      for (std::size_t a = 0; a < nn.size(); ++a) cum[a + 1] = cum[a] + zt(nn[a].second);
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(grid[g]), nn.size());
        const double pred = cum[kk] / static_cast<double>(kk);
        sse[g] += (pred - z(i)) * (pred - z(i));
        ++counted[g];
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (sse[g] < sse[best]) best = g;
  }
  auto model = fit_k(x, z, grid[best]);
  model->cv_mse_ = counted[best] > 0 ? sse[best] / static_cast<double>(counted[best]) : 0.0;
  // Training error over the rows used for cross-validation.
  Matrix xs(cv_n, x.cols());
  Vector zs(cv_n);
  for (Index i = 0; i < cv_n; ++i) {
    xs.row(i) = x.row(cv_rows[static_cast<std::size_t>(i)]);
    zs(i) = z(cv_rows[static_cast<std::size_t>(i)]);
  }
  model->train_mse_ = (model->predict(xs) - zs).squaredNorm() / static_cast<double>(cv_n);
  return model;
}

Vector KnnModel::predict(const Matrix& x) const {
  if (x.cols() != mean_.size()) throw ShapeMismatchError("knn predict: wrong number of columns");
  Vector out(x.rows());
  Vector q(x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) q(j) = (x(i, j) - mean_(j)) / scale_(j);
    const auto nn = tree_->query(q.data(), k_);
    double s = 0.0;
    for (const auto& e : nn) s += z_(e.second);
    out(i) = s / static_cast<double>(nn.size());
  }
  return out;
}

nlohmann::json KnnModel::summary() const {
  return {{"kind", "knn"}, {"k", k_}, {"cv_mse", cv_mse_}, {"train_mse", train_mse_}};
}

}  // namespace shapcond
