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

#ifndef SHAPCOND_COPULA_HPP_
#define SHAPCOND_COPULA_HPP_

#include <vector>

#include "shapcond/coalition.hpp"
#include "shapcond/empirical_margin.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

// Empirical margins joined by a Gaussian copula: each feature is mapped to the
// normal scale by v_j = Phi^{-1}(F_j(x_j)) and the transformed data get a
// multivariate Gaussian fit.
struct CopulaModel {
  std::vector<EmpiricalMargin> margins;
  GaussianParams gauss;

  Index dim() const { return static_cast<Index>(margins.size()); }
  double to_normal_scale(int feature, double x) const;
  double from_normal_scale(int feature, double v) const;
};

CopulaModel copula_fit(const Matrix& x);

// Conditional draws in three steps: move x_s to the normal scale, sample the
// Gaussian conditional there, and map each unobserved margin back through
// F_j^{-1}(Phi(v_j)). Returns k x |Sbar| values that lie within the training
// range of each margin.
Matrix copula_conditional_sample(const CopulaModel& model, Coalition s, const Vector& x_s, Index k,
                                 Rng& rng);

}  // namespace shapcond

#endif  // SHAPCOND_COPULA_HPP_
