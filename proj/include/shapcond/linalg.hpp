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

#ifndef SHAPCOND_LINALG_HPP_
#define SHAPCOND_LINALG_HPP_

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace shapcond {

// Data matrices are row-major: one observation per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Lower-triangular L with L * L^T == a. Throws NotPositiveDefiniteError when a
// pivot is not strictly positive, and DomainError when a is not symmetric to
// within 1e-10 relative to its largest entry.
Matrix cholesky(const Matrix& a);

// Solves a * x = b for symmetric positive definite a.
Vector spd_solve(const Matrix& a, const Vector& b);

// Inverse of a symmetric positive definite matrix via its Cholesky factor.
Matrix spd_inverse(const Matrix& a);

bool is_symmetric(const Matrix& a, double tol = 1e-10);

Matrix submatrix(const Matrix& a, std::span<const int> rows, std::span<const int> cols);
Vector subvector(const Vector& v, std::span<const int> idx);

// Unbiased sample covariance (divisor n - 1) of the rows of x.
Matrix sample_covariance(const Matrix& x);
Vector column_means(const Matrix& x);

}  // namespace shapcond

#endif  // SHAPCOND_LINALG_HPP_
