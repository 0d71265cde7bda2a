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

#ifndef SHAPCOND_BURR_HPP_
#define SHAPCOND_BURR_HPP_

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

// Multivariate Burr distribution on (0, inf)^M with joint survival function
// P(X > x) = (1 + sum_m r_m x_m^{b_m})^{-kappa}.
struct BurrParams {
  double kappa = 1.0;
  Vector b;
  Vector r;

  Index dim() const { return b.size(); }
  // Throws DomainError unless every parameter is positive and finite.
  void validate() const;
};

double burr_log_density(const BurrParams& p, const Vector& x);
double burr_survival(const BurrParams& p, const Vector& x);

// Parameters of x_Sbar | x_S = x_s: kappa + |S|, b unchanged, and
// r_j / (1 + sum_{m in S} r_m x_m^{b_m}). Throws DomainError when any
// conditioning value is not strictly positive.
BurrParams burr_conditional(const BurrParams& p, Coalition s, const Vector& x_s);

// Gamma-compounded Weibull draws: theta ~ Gamma(kappa, 1), then
// x_m = (E_m / (theta r_m))^{1 / b_m} with E_m ~ Exp(1).
Matrix burr_sample(const BurrParams& p, Index n, Rng& rng);

}  // namespace shapcond

#endif  // SHAPCOND_BURR_HPP_
