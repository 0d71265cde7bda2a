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

#include "shapcond/shapley.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shapcond/error.hpp"
#include "shapcond/log.hpp"

namespace shapcond {
namespace {

void check_dimension(int m) {
  if (m < 1 || m > kMaxFeatures) {
    throw InvalidDimensionError("number of features must be in [1, " +
                                std::to_string(kMaxFeatures) + "], got " + std::to_string(m));
  }
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// Next k-combination of {0..m-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<int>& c, int m) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == m - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

std::vector<Coalition> enumerate_coalitions(int m) {
  check_dimension(m);
  std::vector<Coalition> out;
  out.reserve(std::size_t{1} << m);
  out.emplace_back(0u);
  for (int k = 1; k <= m; ++k) {
    std::vector<int> c(k);
    for (int i = 0; i < k; ++i) c[i] = i;
    do {
      std::uint32_t bits = 0;
      for (int j : c) bits |= 1u << j;
      out.emplace_back(bits);
    } while (next_combination(c, m));
  }
  return out;
}

std::vector<Coalition> nontrivial_coalitions(int m) {
  std::vector<Coalition> all = enumerate_coalitions(m);
  return {all.begin() + 1, all.end() - 1};
}

double kernel_weight(int m, int s, double large_constant) {
  if (s < 0 || s > m) throw InvalidDimensionError("kernel_weight: coalition size out of range");
  if (s == 0 || s == m) return large_constant;
  return (m - 1.0) / (binomial(m, s) * s * (m - s));
}

KernelWeightTable::KernelWeightTable(int m, double large_constant)
    : m_(m), large_constant_(large_constant) {
  check_dimension(m);
  if (!(large_constant > 0.0)) throw ConfigError("large constant must be positive");
  weights_.resize(static_cast<std::size_t>(m) + 1);
  for (int s = 0; s <= m; ++s) weights_[s] = kernel_weight(m, s, large_constant);
}

ContributionMatrix::ContributionMatrix(int m, Index num_instances)
    : num_features(m), values(Matrix::Zero(Index{1} << m, num_instances)) {}

ShapleySolver::ShapleySolver(const KernelWeightTable& weights) : m_(weights.num_features()) {
  const std::vector<Coalition> coalitions = enumerate_coalitions(m_);
  const Index rows = static_cast<Index>(coalitions.size());
  Matrix z = Matrix::Zero(rows, m_ + 1);
  Vector w(rows);
  for (Index r = 0; r < rows; ++r) {
    z(r, 0) = 1.0;
    for (int j = 0; j < m_; ++j) z(r, j + 1) = coalitions[r].contains(j) ? 1.0 : 0.0;
    w(r) = weights(coalitions[r].size());
  }
  const Matrix ztw = z.transpose() * w.asDiagonal();  // (M+1) x 2^M
  const Eigen::MatrixXd normal = ztw * z;
  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() == Eigen::Success) {
    projection_ = llt.solve(Eigen::MatrixXd(ztw));
  } else {
    warn("Shapley normal equations not positive definite; using pivoted LU");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
    if (!lu.isInvertible()) {
      throw NumericalFailureError("Shapley normal equations are singular");
    }
    projection_ = lu.solve(Eigen::MatrixXd(ztw));
  }
}

ShapleyExplanation ShapleySolver::solve(const ContributionMatrix& v) const {
  if (v.num_features != m_ || v.values.rows() != projection_.cols()) {
    throw ShapeMismatchError("contribution matrix does not match the solver dimension");
  }
  return ShapleyExplanation{projection_ * v.values};
}

Vector ShapleySolver::solve(const Vector& v) const {
  if (v.size() != projection_.cols()) {
    throw ShapeMismatchError("contribution vector does not match the solver dimension");
  }
  return projection_ * v;
}

ShapleyExplanation solve_shapley_wls(const ContributionMatrix& v,
                                     const KernelWeightTable& weights) {
  return ShapleySolver(weights).solve(v);
}

std::vector<double> shapley_exact(const std::unordered_map<std::uint32_t, double>& game, int m) {
  check_dimension(m);
  const std::uint32_t count = 1u << m;
  std::vector<double> v(count);
  for (std::uint32_t b = 0; b < count; ++b) {
    const auto it = game.find(b);
    if (it == game.end()) {
      throw IncompleteGameError("game has no value for coalition bits " + std::to_string(b));
    }
    v[b] = it->second;
  }
  std::vector<double> size_weight(m);
  for (int s = 0; s < m; ++s) {
    size_weight[s] = std::exp(std::lgamma(s + 1.0) + std::lgamma(m - s) - std::lgamma(m + 1.0));
  }
  std::vector<double> phi(m, 0.0);
  for (int j = 0; j < m; ++j) {
    const std::uint32_t bit = 1u << j;
    for (std::uint32_t b = 0; b < count; ++b) {
      if (b & bit) continue;
      phi[j] += size_weight[std::popcount(b)] * (v[b | bit] - v[b]);
    }
  }
  return phi;
}

}  // namespace shapcond
