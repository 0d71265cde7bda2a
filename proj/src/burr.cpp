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

#include "shapcond/burr.hpp"

#include <cmath>
#include <limits>

#include "shapcond/error.hpp"

namespace shapcond {

void BurrParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("Burr kappa must be positive");
  if (b.size() != r.size() || b.size() == 0) throw DomainError("Burr b and r must match in size");
  for (Index j = 0; j < b.size(); ++j) {
    if (!(b(j) > 0.0) || !(r(j) > 0.0) || !std::isfinite(b(j)) || !std::isfinite(r(j))) {
      throw DomainError("Burr b and r entries must be positive");
    }
  }
}

double burr_log_density(const BurrParams& p, const Vector& x) {
  const Index m = p.dim();
  if (x.size() != m) throw ShapeMismatchError("burr_log_density: dimension mismatch");
  double sum = 1.0;
  double log_terms = 0.0;
  for (Index j = 0; j < m; ++j) {
    if (!(x(j) > 0.0)) return -std::numeric_limits<double>::infinity();
    const double lx = std::log(x(j));
    sum += p.r(j) * std::exp(p.b(j) * lx);
    log_terms += std::log(p.b(j) * p.r(j)) + (p.b(j) - 1.0) * lx;
  }
  return std::lgamma(p.kappa + m) - std::lgamma(p.kappa) + log_terms -
         (p.kappa + m) * std::log(sum);
}

double burr_survival(const BurrParams& p, const Vector& x) {
  double sum = 1.0;
  for (Index j = 0; j < p.dim(); ++j) sum += p.r(j) * std::pow(std::max(x(j), 0.0), p.b(j));
  return std::pow(sum, -p.kappa);
}

BurrParams burr_conditional(const BurrParams& p, Coalition s, const Vector& x_s) {
  const std::vector<int> observed = s.features();
  if (x_s.size() != static_cast<Index>(observed.size())) {
    throw ShapeMismatchError("burr_conditional: conditioning vector has the wrong length");
  }
  double denom = 1.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(x_s(static_cast<Index>(i)) > 0.0)) {
      throw DomainError("burr_conditional: conditioning values must be positive");
    }
    const int m = observed[i];
    denom += p.r(m) * std::pow(x_s(static_cast<Index>(i)), p.b(m));
  }
  const std::vector<int> unobserved = s.complement(static_cast<int>(p.dim())).features();
  BurrParams out;
  out.kappa = p.kappa + static_cast<double>(observed.size());
  out.b.resize(static_cast<Index>(unobserved.size()));
  out.r.resize(static_cast<Index>(unobserved.size()));
  for (std::size_t i = 0; i < unobserved.size(); ++i) {
    out.b(static_cast<Index>(i)) = p.b(unobserved[i]);
    out.r(static_cast<Index>(i)) = p.r(unobserved[i]) / denom;
  }
  return out;
}

Matrix burr_sample(const BurrParams& p, Index n, Rng& rng) {
  p.validate();
  const Index m = p.dim();
  Matrix out(n, m);
  for (Index i = 0; i < n; ++i) {
    const double theta = rng.gamma(p.kappa);
    for (Index j = 0; j < m; ++j) {
      out(i, j) = std::pow(rng.exponential() / (theta * p.r(j)), 1.0 / p.b(j));
    }
  }
  return out;
}

}  // namespace shapcond
