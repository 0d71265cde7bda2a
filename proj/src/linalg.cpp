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

#include "shapcond/linalg.hpp"

#include <cmath>
#include <string>

#include "shapcond/error.hpp"

namespace shapcond {

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > tol * scale) return false;
    }
  }
  return true;
}

Matrix cholesky(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw ShapeMismatchError("cholesky: matrix is not square");
  }
  if (!is_symmetric(a)) throw DomainError("cholesky: matrix is not symmetric");
  const Index n = a.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NotPositiveDefiniteError("cholesky: non-positive pivot at index " +
                                     std::to_string(j));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vector spd_solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw ShapeMismatchError("spd_solve: size mismatch");
  const Matrix l = cholesky(a);
  Vector y = l.triangularView<Eigen::Lower>().solve(b);
  return l.transpose().triangularView<Eigen::Upper>().solve(y);
}

Matrix spd_inverse(const Matrix& a) {
  const Matrix l = cholesky(a);
  Matrix linv = l.triangularView<Eigen::Lower>().solve(Matrix::Identity(a.rows(), a.cols()));
  Matrix inv = linv.transpose() * linv;
  return 0.5 * (inv + inv.transpose());
}

Matrix submatrix(const Matrix& a, std::span<const int> rows, std::span<const int> cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  }
  return out;
}

Vector subvector(const Vector& v, std::span<const int> idx) {
  Vector out(static_cast<Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

Vector column_means(const Matrix& x) {
  if (x.rows() == 0) throw InsufficientDataError("column_means: empty matrix");
  return x.colwise().mean().transpose();
}

Matrix sample_covariance(const Matrix& x) {
  if (x.rows() < 2) throw InsufficientDataError("sample_covariance: need at least 2 rows");
  const Vector mu = column_means(x);
  Matrix centered = x.rowwise() - mu.transpose();
  Matrix cov = (centered.transpose() * centered) / static_cast<double>(x.rows() - 1);
  return 0.5 * (cov + cov.transpose());
}

}  // namespace shapcond
