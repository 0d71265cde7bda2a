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

#include "shapcond/copula.hpp"

#include "shapcond/error.hpp"
#include "shapcond/special.hpp"

namespace shapcond {

double CopulaModel::to_normal_scale(int feature, double x) const {
  return norm_quantile(margins.at(static_cast<std::size_t>(feature)).cdf(x));
}

double CopulaModel::from_normal_scale(int feature, double v) const {
  return margins.at(static_cast<std::size_t>(feature)).quantile(norm_cdf(v));
}

CopulaModel copula_fit(const Matrix& x) {
  CopulaModel model;
  const Index n = x.rows();
  const Index m = x.cols();
  model.margins.reserve(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    std::vector<double> col(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) col[i] = x(i, j);
    model.margins.emplace_back(col);
  }
  Matrix v(n, m);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < m; ++j) v(i, j) = model.to_normal_scale(static_cast<int>(j), x(i, j));
  }
  model.gauss = gaussian_fit(v);
  return model;
}

Matrix copula_conditional_sample(const CopulaModel& model, Coalition s, const Vector& x_s, Index k,
                                 Rng& rng) {
  const GaussianConditioner cond(model.gauss, s);
  if (x_s.size() != static_cast<Index>(cond.observed().size())) {
    throw ShapeMismatchError("copula_conditional_sample: conditioning vector has the wrong length");
  }
  Vector v_s(x_s.size());
  for (Index i = 0; i < x_s.size(); ++i) {
    v_s(i) = model.to_normal_scale(cond.observed()[i], x_s(i));
  }
  Matrix draws = cond.sample(v_s, k, rng);
  for (Index c = 0; c < draws.cols(); ++c) {
    const int feature = cond.unobserved()[c];
    for (Index r = 0; r < draws.rows(); ++r) {
      draws(r, c) = model.from_normal_scale(feature, draws(r, c));
    }
  }
  return draws;
}

}  // namespace shapcond
