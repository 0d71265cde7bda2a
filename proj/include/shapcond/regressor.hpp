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

#ifndef SHAPCOND_REGRESSOR_HPP_
#define SHAPCOND_REGRESSOR_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapcond/linalg.hpp"

namespace shapcond {

enum class RegressorKind { kLm, kPoly, kLmInter, kPolyInter, kKnn, kCart, kPprCv, kPprFixed };

struct RegressorSpec {
  RegressorKind kind = RegressorKind::kLm;
  // poly: per-feature degree p. poly_inter: total degree d.
  int degree = 2;
  // lm_inter: products of up to order + 1 distinct features.
  int order = 1;
  // ppr_fixed: number of ridge terms.
  int ppr_terms = 1;
  // ppr_cv grid; empty selects {1, ..., min(M, 5)}.
  std::vector<int> ppr_grid;
  std::vector<int> knn_grid = {3, 5, 10, 20, 40};
  double cart_cp = 0.001;
  Index cart_minsplit = 20;
  Index cart_minbucket = 7;
  int folds = 5;
  std::uint64_t seed = 1;
  // The last linear_tail input columns enter polynomial bases linearly only
  // (used for the mask bits of surrogate models).
  int linear_tail = 0;
  // Caps the rows used for cross-validation; 0 means no cap.
  Index cv_max_rows = 0;

  // Throws ConfigError on out-of-range settings.
  void validate() const;
};

// Parses names such as "lm", "poly2", "lm_inter1", "poly_inter2", "knn",
// "cart", "ppr", "ppr_fixed". Throws ConfigError for unknown names.
RegressorSpec regressor_spec_from_name(const std::string& name);
std::string regressor_name(const RegressorSpec& spec);

class Regressor {
 public:
  virtual ~Regressor() = default;
  virtual Vector predict(const Matrix& x) const = 0;
  double predict_one(const Vector& x) const;
  // Kind, selected hyperparameters and training MSE.
  virtual nlohmann::json summary() const = 0;
};

// Throws InsufficientDataError for fewer than two rows and ConfigError for an
// invalid spec.
std::unique_ptr<Regressor> fit_regressor(const RegressorSpec& spec, const Matrix& x, const Vector& z);

// Deterministic fold labels: a seeded shuffle of 0..n-1, then position mod folds.
std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed);

// Monomial terms over the input columns; each term lists column indices with
// repetition for powers.
using Monomial = std::vector<int>;
std::vector<Monomial> basis_terms(const RegressorSpec& spec, int num_inputs);

// Least squares on a monomial basis of scaled inputs, with intercept.
class LinearBasisModel : public Regressor {
 public:
  static std::unique_ptr<LinearBasisModel> fit(const RegressorSpec& spec, const Matrix& x,
                                               const Vector& z);
  Vector predict(const Matrix& x) const override;
  nlohmann::json summary() const override;

  const std::vector<Monomial>& terms() const { return terms_; }
  double intercept() const { return intercept_; }
  // Coefficients on the original (unscaled) monomials.
  Vector coefficients() const;
  bool rank_deficient() const { return rank_deficient_; }

 private:
  Matrix design(const Matrix& x, Index begin, Index end) const;

  RegressorSpec spec_;
  std::vector<Monomial> terms_;
  Vector scale_;
  double intercept_ = 0.0;
  Vector coef_;
  bool rank_deficient_ = false;
  double train_mse_ = 0.0;
};

// k nearest neighbours on standardised inputs (Euclidean), k chosen by CV
// from the grid. Ties in distance are broken by training row order.
class KnnModel : public Regressor {
 public:
  static std::unique_ptr<KnnModel> fit(const RegressorSpec& spec, const Matrix& x, const Vector& z);
  // Fixed k, no cross-validation.
  static std::unique_ptr<KnnModel> fit_k(const Matrix& x, const Vector& z, int k);
  ~KnnModel() override;
  Vector predict(const Matrix& x) const override;
  nlohmann::json summary() const override;
  int k() const { return k_; }

 private:
  struct Tree;
  KnnModel();
  int k_ = 1;
  Vector mean_;
  Vector scale_;
  Vector z_;
  std::unique_ptr<Tree> tree_;
  double cv_mse_ = 0.0;
  double train_mse_ = 0.0;
};

// Regression tree grown by least-squares splits while the improvement is at
// least cp times the root deviance, then pruned by cost complexity with the
// penalty chosen by cross-validation.
class CartModel : public Regressor {
 public:
  struct Node {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;
    double deviance = 0.0;
    Index count = 0;
    bool is_leaf() const { return feature < 0; }
  };

  static std::unique_ptr<CartModel> fit(const RegressorSpec& spec, const Matrix& x, const Vector& z);
  // Grown tree without pruning.
  static std::unique_ptr<CartModel> grow(const RegressorSpec& spec, const Matrix& x, const Vector& z);
  Vector predict(const Matrix& x) const override;
  nlohmann::json summary() const override;

  // Weakest-link penalties at which the tree changes, ascending.
  std::vector<double> pruning_sequence() const;
  void prune(double alpha);
  int num_leaves() const;
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  double predict_row(const double* row) const;
  void compute_prune_alphas();

  std::vector<Node> nodes_;
  std::vector<double> prune_alpha_;
  double alpha_ = 0.0;
  double train_mse_ = 0.0;
};

// Projection pursuit regression: z ~ b0 + sum_l g_l(a_l' x) on standardised
// inputs, with unit-norm directions a_l and local-linear ridge functions.
class PprModel : public Regressor {
 public:
  struct Term {
    Vector direction;
    // Ridge function tabulated on an equally spaced grid over [lo, hi];
    // linear interpolation inside, held constant outside.
    double lo = 0.0;
    double hi = 1.0;
    Vector grid_values;
    double eval(double v) const;
  };

  static std::unique_ptr<PprModel> fit(const RegressorSpec& spec, const Matrix& x, const Vector& z);
  Vector predict(const Matrix& x) const override;
  nlohmann::json summary() const override;

  int num_terms() const { return static_cast<int>(terms_.size()); }
  const std::vector<Term>& terms() const { return terms_; }
  double intercept() const { return intercept_; }
  double train_mse() const { return train_mse_; }

 private:
  friend std::vector<PprModel> ppr_fit_path(const Matrix& x, const Vector& z, int max_terms);
  Vector mean_;
  Vector scale_;
  double intercept_ = 0.0;
  std::vector<Term> terms_;
  double train_mse_ = 0.0;
  std::string selection_;
};

// Fits L = 1..max_terms by forward stagewise addition; the model for L + 1
// continues from the one for L and only accepts changes that lower the
// training error, so the training MSE is nonincreasing in L. max_terms = 0
// yields the single intercept-only model.
std::vector<PprModel> ppr_fit_path(const Matrix& x, const Vector& z, int max_terms);
PprModel ppr_fit(const Matrix& x, const Vector& z, int num_terms);

}  // namespace shapcond

#endif  // SHAPCOND_REGRESSOR_HPP_
