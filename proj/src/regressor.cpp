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

#include "shapcond/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>

#include "shapcond/error.hpp"
#include "shapcond/log.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {
namespace {

constexpr Index kChunkRows = 4096;

void add_subsets(int num_inputs, int max_size, int start, Monomial& current, std::vector<Monomial>& out) {
  for (int j = start; j < num_inputs; ++j) {
    current.push_back(j);
    out.push_back(current);
    if (static_cast<int>(current.size()) < max_size) add_subsets(num_inputs, max_size, j + 1, current, out);
    current.pop_back();
  }
}

void add_multisets(int num_inputs, int max_size, int start, Monomial& current, std::vector<Monomial>& out) {
  for (int j = start; j < num_inputs; ++j) {
    current.push_back(j);
    out.push_back(current);
    if (static_cast<int>(current.size()) < max_size) add_multisets(num_inputs, max_size, j, current, out);
    current.pop_back();
  }
}

}  // namespace

void RegressorSpec::validate() const {
  if (kind == RegressorKind::kPoly || kind == RegressorKind::kPolyInter) {
    if (degree < 1) throw ConfigError("polynomial degree must be at least 1");
  }
  if (kind == RegressorKind::kLmInter && order < 0) throw ConfigError("interaction order must be nonnegative");
  if (kind == RegressorKind::kPprFixed && ppr_terms < 0) throw ConfigError("ppr_fixed needs a nonnegative number of terms");
  if (kind == RegressorKind::kKnn && knn_grid.empty()) throw ConfigError("knn grid must not be empty");
  if (std::any_of(knn_grid.begin(), knn_grid.end(), [](int k) { return k < 1; })) {
    throw ConfigError("knn grid values must be positive");
  }
  if (std::any_of(ppr_grid.begin(), ppr_grid.end(), [](int l) { return l < 0; })) {
    throw ConfigError("ppr grid values must be nonnegative");
  }
  if (folds < 2) throw ConfigError("cross-validation needs at least two folds");
  if (cart_cp < 0.0) throw ConfigError("cart cp must be nonnegative");
  if (cart_minbucket < 1 || cart_minsplit < 2) throw ConfigError("cart minbucket/minsplit out of range");
  if (linear_tail < 0) throw ConfigError("linear_tail must be nonnegative");
}

RegressorSpec regressor_spec_from_name(const std::string& name) {
  RegressorSpec spec;
  std::smatch match;
  if (name == "lm") {
    spec.kind = RegressorKind::kLm;
  } else if (std::regex_match(name, match, std::regex("poly_inter(\\d+)"))) {
    spec.kind = RegressorKind::kPolyInter;
    spec.degree = std::stoi(match[1]);
  } else if (std::regex_match(name, match, std::regex("poly(\\d+)"))) {
    spec.kind = RegressorKind::kPoly;
    spec.degree = std::stoi(match[1]);
  } else if (std::regex_match(name, match, std::regex("lm_inter(\\d+)"))) {
    spec.kind = RegressorKind::kLmInter;
    spec.order = std::stoi(match[1]);
  } else if (name == "knn") {
    spec.kind = RegressorKind::kKnn;
  } else if (name == "cart") {
    spec.kind = RegressorKind::kCart;
  } else if (name == "ppr") {
    spec.kind = RegressorKind::kPprCv;
  } else if (std::regex_match(name, match, std::regex("ppr_fixed(\\d*)"))) {
    spec.kind = RegressorKind::kPprFixed;
    spec.ppr_terms = match[1].length() > 0 ? std::stoi(match[1]) : 0;
  } else {
    throw ConfigError("unknown regressor '" + name + "'");
  }
  spec.validate();
  return spec;
}

std::string regressor_name(const RegressorSpec& spec) {
  switch (spec.kind) {
    case RegressorKind::kLm: return "lm";
    case RegressorKind::kPoly: return "poly" + std::to_string(spec.degree);
    case RegressorKind::kLmInter: return "lm_inter" + std::to_string(spec.order);
    case RegressorKind::kPolyInter: return "poly_inter" + std::to_string(spec.degree);
    case RegressorKind::kKnn: return "knn";
    case RegressorKind::kCart: return "cart";
    case RegressorKind::kPprCv: return "ppr";
    case RegressorKind::kPprFixed: return "ppr_fixed";
  }
  return "unknown";
}

double Regressor::predict_one(const Vector& x) const { return predict(x.transpose())(0); }

std::vector<int> fold_assignment(Index n, int folds, std::uint64_t seed) {
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  Rng rng(seed);
  for (Index i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<std::size_t>(i)], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) out[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = static_cast<int>(i % folds);
  return out;
}

std::vector<Monomial> basis_terms(const RegressorSpec& spec, int num_inputs) {
  const int tail = std::min(spec.linear_tail, num_inputs);
  const int head = num_inputs - tail;
  std::vector<Monomial> out;
  Monomial current;
  switch (spec.kind) {
    case RegressorKind::kLm:
      for (int j = 0; j < num_inputs; ++j) out.push_back({j});
      return out;
    case RegressorKind::kPoly:
      for (int j = 0; j < head; ++j) {
        for (int p = 1; p <= spec.degree; ++p) out.push_back(Monomial(static_cast<std::size_t>(p), j));
      }
      break;
    case RegressorKind::kLmInter:
      add_subsets(num_inputs, spec.order + 1, 0, current, out);
      return out;
    case RegressorKind::kPolyInter:
      add_multisets(head, spec.degree, 0, current, out);
      break;
    default:
      throw ConfigError("basis_terms: not a linear-basis regressor");
  }
  for (int j = head; j < num_inputs; ++j) out.push_back({j});
  return out;
}

std::unique_ptr<LinearBasisModel> LinearBasisModel::fit(const RegressorSpec& spec, const Matrix& x,
                                                        const Vector& z) {
  spec.validate();
  const Index n = x.rows();
  if (n < 2) throw InsufficientDataError("regression needs at least two rows");
  if (z.size() != n) throw ShapeMismatchError("regression: response length does not match rows");
  auto model = std::unique_ptr<LinearBasisModel>(new LinearBasisModel());
  model->spec_ = spec;
  model->terms_ = basis_terms(spec, static_cast<int>(x.cols()));
  const Vector mean = column_means(x);
  model->scale_.resize(x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    const double sd = std::sqrt((x.col(j).array() - mean(j)).square().sum() / static_cast<double>(n - 1));
    model->scale_(j) = sd > 0.0 ? sd : 1.0;
  }
  const Index p = static_cast<Index>(model->terms_.size());
  // Cross products of [1, basis, z], streamed so the full design never lives
  // in memory.
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p + 2, p + 2);
  for (Index begin = 0; begin < n; begin += kChunkRows) {
    const Index end = std::min(n, begin + kChunkRows);
    Eigen::MatrixXd block(end - begin, p + 2);
    block.col(0).setOnes();
    block.middleCols(1, p) = model->design(x, begin, end);
    block.col(p + 1) = z.segment(begin, end - begin);
    g.selfadjointView<Eigen::Lower>().rankUpdate(block.transpose());
  }
  g = g.selfadjointView<Eigen::Lower>();
  const double dn = static_cast<double>(n);
  const Eigen::VectorXd means = g.row(0).transpose() / dn;
  Eigen::MatrixXd cov = g / dn - means * means.transpose();
  std::vector<Index> active;
  for (Index k = 1; k <= p; ++k) {
    const double scale = std::max(1.0, means(k) * means(k));
    if (cov(k, k) > 1e-12 * scale) active.push_back(k);
  }
  const Index q = static_cast<Index>(active.size());
  Eigen::MatrixXd a(q, q);
  Eigen::VectorXd b(q);
  Eigen::VectorXd sd(q);
  for (Index i = 0; i < q; ++i) sd(i) = std::sqrt(cov(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(i)]));
  for (Index i = 0; i < q; ++i) {
    b(i) = cov(active[static_cast<std::size_t>(i)], p + 1) / sd(i);
    for (Index j = 0; j < q; ++j) {
      a(i, j) = cov(active[static_cast<std::size_t>(i)], active[static_cast<std::size_t>(j)]) / (sd(i) * sd(j));
    }
  }
  Eigen::VectorXd beta_std(q);
  if (q > 0) {
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    bool ok = llt.info() == Eigen::Success;
    if (ok) {
      const Eigen::VectorXd d = llt.matrixL().toDenseMatrix().diagonal();
      ok = d.minCoeff() > 1e-6 * d.maxCoeff();
    }
    if (!ok || n <= q) {
      model->rank_deficient_ = true;
      warn("regression design is rank deficient; adding a 1e-8 ridge");
      a.diagonal().array() += 1e-8;
      llt.compute(a);
      if (llt.info() != Eigen::Success) throw NumericalFailureError("regression normal equations are singular");
    }
    beta_std = llt.solve(b);
  }
  model->coef_ = Vector::Zero(p);
  double intercept = means(p + 1);
  for (Index i = 0; i < q; ++i) {
    const Index k = active[static_cast<std::size_t>(i)];
    model->coef_(k - 1) = beta_std(i) / sd(i);
    intercept -= model->coef_(k - 1) * means(k);
  }
  model->intercept_ = intercept;
  const Vector fitted = model->predict(x);
  model->train_mse_ = (fitted - z).squaredNorm() / dn;
  return model;
}

Matrix LinearBasisModel::design(const Matrix& x, Index begin, Index end) const {
  const Index p = static_cast<Index>(terms_.size());
  Matrix out(end - begin, p);
  for (Index i = begin; i < end; ++i) {
    for (Index k = 0; k < p; ++k) {
      double v = 1.0;
      for (int j : terms_[static_cast<std::size_t>(k)]) v *= x(i, j) / scale_(j);
      out(i - begin, k) = v;
    }
  }
  return out;
}

Vector LinearBasisModel::predict(const Matrix& x) const {
  if (x.cols() != scale_.size()) throw ShapeMismatchError("regression predict: wrong number of columns");
  Vector out(x.rows());
  for (Index begin = 0; begin < x.rows(); begin += kChunkRows) {
    const Index end = std::min(x.rows(), begin + kChunkRows);
    out.segment(begin, end - begin) = (design(x, begin, end) * coef_).array() + intercept_;
  }
  return out;
}

Vector LinearBasisModel::coefficients() const {
  Vector out = coef_;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    for (int j : terms_[k]) out(static_cast<Index>(k)) /= scale_(j);
  }
  return out;
}

nlohmann::json LinearBasisModel::summary() const {
  return {{"kind", regressor_name(spec_)},
          {"num_terms", terms_.size()},
          {"rank_deficient", rank_deficient_},
          {"train_mse", train_mse_}};
}

std::unique_ptr<Regressor> fit_regressor(const RegressorSpec& spec, const Matrix& x, const Vector& z) {
  spec.validate();
  if (x.rows() < 2) throw InsufficientDataError("regression needs at least two rows");
  if (z.size() != x.rows()) throw ShapeMismatchError("regression: response length does not match rows");
  switch (spec.kind) {
    case RegressorKind::kLm:
    case RegressorKind::kPoly:
    case RegressorKind::kLmInter:
    case RegressorKind::kPolyInter:
      return LinearBasisModel::fit(spec, x, z);
    case RegressorKind::kKnn:
      return KnnModel::fit(spec, x, z);
    case RegressorKind::kCart:
      return CartModel::fit(spec, x, z);
    case RegressorKind::kPprCv:
    case RegressorKind::kPprFixed:
      return PprModel::fit(spec, x, z);
  }
  throw ConfigError("unknown regressor kind");
}

}  // namespace shapcond
