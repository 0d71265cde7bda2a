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

#ifndef SHAPCOND_GAUSSIAN_HPP_
#define SHAPCOND_GAUSSIAN_HPP_

#include <vector>

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

struct GaussianParams {
  Vector mu;
  Matrix sigma;

  Index dim() const { return mu.size(); }
};

// Sample mean and unbiased sample covariance. Warns when N <= M; when the
// covariance is singular, 1e-8 * I is added and a warning is logged.
GaussianParams gaussian_fit(const Matrix& x);

// Distribution of x_Sbar given x_S = x_s. x_s lists the observed values in
// increasing feature order. Throws NumericalFailureError if Sigma_SS is singular.
GaussianParams gaussian_conditional(const GaussianParams& p, Coalition s, const Vector& x_s);

// The conditioning algebra for one coalition, prepared once: the regression
// matrix Sigma_SbarS Sigma_SS^{-1} and the Cholesky factor of the conditional
// covariance. Immutable; sample() takes the caller's generator.
class GaussianConditioner {
 public:
  GaussianConditioner(const GaussianParams& p, Coalition s);

  const std::vector<int>& observed() const { return observed_; }
  const std::vector<int>& unobserved() const { return unobserved_; }

  Vector conditional_mean(const Vector& x_s) const;
  const Matrix& conditional_covariance() const { return cov_; }

  // k x |Sbar| draws. With antithetic set, rows come in pairs (z, -z).
  Matrix sample(const Vector& x_s, Index k, Rng& rng, bool antithetic = false) const;

 private:
  std::vector<int> observed_;
  std::vector<int> unobserved_;
  Vector mu_s_;
  Vector mu_sbar_;
  Matrix gain_;  // |Sbar| x |S|
  Matrix cov_;
  Matrix chol_;
};

}  // namespace shapcond

#endif  // SHAPCOND_GAUSSIAN_HPP_
