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

#include "shapcond/gaussian.hpp"

#include <string>

#include "shapcond/error.hpp"
#include "shapcond/log.hpp"

namespace shapcond {
namespace {

std::vector<int> all_features(Index m, Coalition s, bool in) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(m); ++j) {
    if (s.contains(j) == in) out.push_back(j);
  }
  return out;
}

// Cholesky with a growing diagonal jitter for covariances that are PSD but
// numerically rank deficient.
Matrix jittered_cholesky(const Matrix& a) {
  if (a.rows() == 0) return a;
  double jitter = 0.0;
  const double scale = std::max(1e-300, a.diagonal().cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      Matrix b = a;
      b.diagonal().array() += jitter;
      return cholesky(b);
    } catch (const NotPositiveDefiniteError&) {
      jitter = jitter == 0.0 ? 1e-12 * scale : jitter * 100.0;
    }
  }
  throw NotPositiveDefiniteError("conditional covariance is not positive semidefinite");
}

}  // namespace

GaussianParams gaussian_fit(const Matrix& x) {
  if (x.rows() < 2) throw InsufficientDataError("gaussian_fit: need at least 2 rows");
  if (x.rows() <= x.cols()) {
    warn("gaussian_fit: N <= M, covariance is rank deficient");
  }
  GaussianParams p{column_means(x), sample_covariance(x)};
  try {
    (void)cholesky(p.sigma);
  } catch (const NotPositiveDefiniteError&) {
    warn("gaussian_fit: singular covariance, adding 1e-8 * I");
    p.sigma.diagonal().array() += 1e-8;
  }
  return p;
}

GaussianConditioner::GaussianConditioner(const GaussianParams& p, Coalition s)
    : observed_(all_features(p.dim(), s, true)), unobserved_(all_features(p.dim(), s, false)) {
  mu_s_ = subvector(p.mu, observed_);
  mu_sbar_ = subvector(p.mu, unobserved_);
  const Matrix sbb = submatrix(p.sigma, unobserved_, unobserved_);
  if (observed_.empty()) {
    gain_ = Matrix::Zero(static_cast<Index>(unobserved_.size()), 0);
    cov_ = sbb;
  } else {
    const Matrix sss = submatrix(p.sigma, observed_, observed_);
    const Matrix sbs = submatrix(p.sigma, unobserved_, observed_);
    Matrix inv;
    try {
      inv = spd_inverse(sss);
    } catch (const NotPositiveDefiniteError& e) {
      throw NumericalFailureError(std::string("Sigma_SS is singular: ") + e.what());
    }
    gain_ = sbs * inv;
    cov_ = sbb - gain_ * sbs.transpose();
    cov_ = 0.5 * (cov_ + cov_.transpose());
  }
  chol_ = jittered_cholesky(cov_);
}

Vector GaussianConditioner::conditional_mean(const Vector& x_s) const {
  if (x_s.size() != static_cast<Index>(observed_.size())) {
    throw ShapeMismatchError("conditioning vector has the wrong length");
  }
  if (observed_.empty()) return mu_sbar_;
  return mu_sbar_ + gain_ * (x_s - mu_s_);
}

Matrix GaussianConditioner::sample(const Vector& x_s, Index k, Rng& rng, bool antithetic) const {
  const Vector mean = conditional_mean(x_s);
  const Index d = mean.size();
  Matrix out(k, d);
  Vector z(d);
  for (Index i = 0; i < k; ++i) {
    if (antithetic && (i % 2 == 1)) {
      z = -z;
    } else {
      for (Index j = 0; j < d; ++j) z(j) = rng.normal();
    }
    // out_i = mean + L z, with L lower triangular.
    for (Index r = 0; r < d; ++r) {
      double acc = mean(r);
      for (Index c = 0; c <= r; ++c) acc += chol_(r, c) * z(c);
      out(i, r) = acc;
    }
  }
  return out;
}

GaussianParams gaussian_conditional(const GaussianParams& p, Coalition s, const Vector& x_s) {
  GaussianConditioner c(p, s);
  return GaussianParams{c.conditional_mean(x_s), c.conditional_covariance()};
}

}  // namespace shapcond
