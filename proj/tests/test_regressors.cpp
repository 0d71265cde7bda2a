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
#include "shapcond/regressor.hpp"
#include "shapcond/rng.hpp"

using namespace shapcond;

namespace {

double r_squared(const Vector& z, const Vector& pred) {
  const double ss = (z.array() - z.mean()).square().sum();
  return 1.0 - (z - pred).squaredNorm() / ss;
}

}  // namespace

TEST(RegressorSpec, Names) {
  EXPECT_EQ(regressor_spec_from_name("poly3").degree, 3);
  EXPECT_EQ(regressor_spec_from_name("lm_inter2").order, 2);
  EXPECT_EQ(regressor_spec_from_name("poly_inter2").kind, RegressorKind::kPolyInter);
  EXPECT_EQ(regressor_name(regressor_spec_from_name("lm_inter1")), "lm_inter1");
  EXPECT_THROW(regressor_spec_from_name("forest"), ConfigError);
  RegressorSpec s = regressor_spec_from_name("knn");
  s.knn_grid.clear();
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(LinearBasis, RecoversLinearCoefficients) {
  Rng rng(1);
  const Matrix x = sample_std_normal(rng, 200, 3);
  const Vector z = (x * Eigen::Vector3d(1.0, -2.0, 0.5)).array() + 4.0;
  auto m = LinearBasisModel::fit(regressor_spec_from_name("lm"), x, z);
  EXPECT_NEAR(m->intercept(), 4.0, 1e-8);
  EXPECT_TRUE(m->coefficients().isApprox(Eigen::Vector3d(1.0, -2.0, 0.5), 1e-8));
}

TEST(LinearBasis, RecoversInteraction) {
  Rng rng(2);
  const Matrix x = sample_std_normal(rng, 300, 3);
  const Vector z = x.col(0).cwiseProduct(x.col(1));
  auto m = LinearBasisModel::fit(regressor_spec_from_name("lm_inter1"), x, z);
  const auto& terms = m->terms();
  const Vector c = m->coefficients();
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const double expected = terms[t] == Monomial{0, 1} ? 1.0 : 0.0;
    EXPECT_NEAR(c(static_cast<Index>(t)), expected, 1e-8);
  }
}

TEST(LinearBasis, BasisSizes) {
  RegressorSpec s = regressor_spec_from_name("poly_inter2");
  EXPECT_EQ(basis_terms(s, 3).size(), 9u);  // 3 linear + 6 of degree two
  s = regressor_spec_from_name("poly2");
  EXPECT_EQ(basis_terms(s, 3).size(), 6u);
  s = regressor_spec_from_name("lm_inter1");
  EXPECT_EQ(basis_terms(s, 4).size(), 10u);
}

TEST(Knn, OneNeighbourInterpolates) {
  Rng rng(3);
  const Matrix x = sample_std_normal(rng, 100, 2);
  const Vector z = x.col(0).array().sin();
  auto m = KnnModel::fit_k(x, z, 1);
  const Vector p = m->predict(x);
  EXPECT_TRUE(p.isApprox(z, 1e-14));
}

TEST(Knn, CrossValidationPicksFromGrid) {
  Rng rng(4);
  const Matrix x = sample_std_normal(rng, 400, 2);
  Vector z = x.col(0);
  for (Index i = 0; i < z.size(); ++i) z(i) += rng.normal();
  auto m = KnnModel::fit(regressor_spec_from_name("knn"), x, z);
  const std::vector<int> grid = {3, 5, 10, 20, 40};
  EXPECT_NE(std::find(grid.begin(), grid.end(), m->k()), grid.end());
  EXPECT_GE(m->k(), 10);
}

TEST(Cart, StepFunction) {
  Rng rng(5);
  const Matrix x = sample_std_normal(rng, 500, 2);
  Vector z(500);
  for (Index i = 0; i < 500; ++i) z(i) = x(i, 1) > 0.5 ? 2.0 : -1.0;
  auto m = CartModel::fit(regressor_spec_from_name("cart"), x, z);
  EXPECT_EQ(m->num_leaves(), 2);
  EXPECT_EQ(m->nodes()[0].feature, 1);
  EXPECT_NEAR(m->nodes()[0].threshold, 0.5, 0.1);
}

TEST(Cart, PruningSequenceIsMonotone) {
  Rng rng(6);
  const Matrix x = sample_std_normal(rng, 300, 3);
  const Vector z = x.col(0).array().square() + x.col(1).array();
  auto m = CartModel::grow(regressor_spec_from_name("cart"), x, z);
  const auto seq = m->pruning_sequence();
  ASSERT_FALSE(seq.empty());
  EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
  const int before = m->num_leaves();
  m->prune(seq.back() * 1.01);
  EXPECT_EQ(m->num_leaves(), 1);
  EXPECT_GT(before, 1);
}

TEST(Ppr, SingleIndex) {
  Rng rng(7);
  const Matrix x = sample_std_normal(rng, 1000, 3);
  const Vector a = Eigen::Vector3d(0.6, -0.8, 0.0);
  const Vector z = (x * a).array().cos();
  const PprModel m = ppr_fit(x, z, 1);
  EXPECT_GT(r_squared(z, m.predict(x)), 0.95);
}

TEST(Ppr, InterceptOnly) {
  Rng rng(8);
  const Matrix x = sample_std_normal(rng, 50, 2);
  const Vector z = x.col(0);
  const PprModel m = ppr_fit(x, z, 0);
  EXPECT_EQ(m.num_terms(), 0);
  EXPECT_TRUE(m.predict(x).isApprox(Vector::Constant(50, z.mean())));
}

TEST(Ppr, LinearResponseMatchesLm) {
  Rng rng(9);
  const Matrix x = sample_std_normal(rng, 500, 3);
  const Vector z = (x * Eigen::Vector3d(1.0, 0.5, -0.3)).array() + 1.0;
  const PprModel m = ppr_fit(x, z, 1);
  auto lm = LinearBasisModel::fit(regressor_spec_from_name("lm"), x, z);
  EXPECT_LT((m.predict(x) - lm->predict(x)).squaredNorm() / 500.0, 1e-3);
}

TEST(Ppr, PathErrorIsNonincreasing) {
  Rng rng(10);
  const Matrix x = sample_std_normal(rng, 400, 3);
  const Vector z = (x.col(0).array() * x.col(1).array()) + x.col(2).array().sin();
  const auto path = ppr_fit_path(x, z, 4);
  for (std::size_t l = 1; l < path.size(); ++l) EXPECT_LE(path[l].train_mse(), path[l - 1].train_mse() + 1e-12);
}

TEST(Folds, DeterministicAndBalanced) {
  const auto a = fold_assignment(103, 5, 4), b = fold_assignment(103, 5, 4);
  EXPECT_EQ(a, b);
  std::vector<int> counts(5, 0);
  for (int f : a) ++counts[static_cast<std::size_t>(f)];
  for (int c : counts) EXPECT_GE(c, 20);
}

TEST(Regressor, TooFewRows) {
  EXPECT_THROW(fit_regressor(regressor_spec_from_name("lm"), Matrix::Ones(1, 2), Vector::Ones(1)),
               InsufficientDataError);
}
