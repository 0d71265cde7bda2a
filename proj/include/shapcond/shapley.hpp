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

#ifndef SHAPCOND_SHAPLEY_HPP_
#define SHAPCOND_SHAPLEY_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"

namespace shapcond {

inline constexpr double kDefaultLargeConstant = 1e6;

// Shapley kernel weight k(M, s) = (M - 1) / (binom(M, s) s (M - s)) for
// 0 < s < M; the infinite weights at s = 0 and s = M become large_constant.
double kernel_weight(int m, int s, double large_constant = kDefaultLargeConstant);

class KernelWeightTable {
 public:
  explicit KernelWeightTable(int m, double large_constant = kDefaultLargeConstant);

  int num_features() const { return m_; }
  double large_constant() const { return large_constant_; }
  double operator()(int size) const { return weights_.at(static_cast<std::size_t>(size)); }

 private:
  int m_;
  double large_constant_;
  std::vector<double> weights_;
};

// v(S) for every coalition (rows, in enumerate_coalitions order) and every
// explained instance (columns).
struct ContributionMatrix {
  int num_features = 0;
  Matrix values;

  ContributionMatrix() = default;
  ContributionMatrix(int m, Index num_instances);

  Index num_instances() const { return values.cols(); }
};

// phi is (M + 1) x N_test; row 0 holds phi_0.
struct ShapleyExplanation {
  Matrix phi;
};

// Weighted least squares Shapley solver. The projection R = (Z^T W Z)^{-1} Z^T W
// depends only on M and the weights, so it is formed once and applied to every
// column of V. Immutable after construction.
class ShapleySolver {
 public:
  explicit ShapleySolver(const KernelWeightTable& weights);

  int num_features() const { return m_; }
  // (M + 1) x 2^M.
  const Matrix& projection() const { return projection_; }

  ShapleyExplanation solve(const ContributionMatrix& v) const;
  // One instance: v has 2^M entries in enumeration order.
  Vector solve(const Vector& v) const;

 private:
  int m_;
  Matrix projection_;
};

ShapleyExplanation solve_shapley_wls(const ContributionMatrix& v, const KernelWeightTable& weights);

// Exact Shapley values phi_1..phi_M from a complete game, keyed by coalition
// bits. Enumerates all coalitions, so meant for M <= 12. Throws
// IncompleteGameError if any coalition is missing.
std::vector<double> shapley_exact(const std::unordered_map<std::uint32_t, double>& game, int m);

}  // namespace shapcond

#endif  // SHAPCOND_SHAPLEY_HPP_
