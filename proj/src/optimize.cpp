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

#include "shapcond/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "shapcond/error.hpp"

namespace shapcond {
namespace {

double safe_eval(const std::function<double(const Vector&)>& f, const Vector& x) {
  const double v = f(x);
  return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& objective,
                             const Vector& x0, const NelderMeadOptions& options) {
  const Index n = x0.size();
  if (n == 0) throw InvalidDimensionError("nelder_mead: empty parameter vector");
  const int max_iter = options.max_iter > 0 ? options.max_iter : 2000 * static_cast<int>(n);
  double step = options.initial_step;
  if (step <= 0.0) {
    const double scale = x0.cwiseAbs().maxCoeff();
    step = scale > 0.0 ? 0.1 * scale : 0.1;
  }

  std::vector<Vector> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  for (Index i = 0; i < n; ++i) simplex[i + 1](i) += step;
  for (Index i = 0; i <= n; ++i) values[i] = safe_eval(objective, simplex[i]);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return values[a] < values[b]; });
    std::vector<Vector> s(n + 1);
    std::vector<double> v(n + 1);
    for (Index i = 0; i <= n; ++i) {
      s[i] = std::move(simplex[order[i]]);
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  NelderMeadResult result;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    sort_simplex();
    double diameter = 0.0;
    for (Index i = 1; i <= n; ++i) {
      diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    }
    const double spread = values[n] - values[0];
    if (diameter < options.tol ||
        (std::isfinite(values[n]) &&
         spread <= options.tol * (std::abs(values[0]) + options.tol))) {
      result.converged = true;
      break;
    }

    Vector centroid = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(n);
    const Vector& worst = simplex[n];

    const Vector reflected = centroid + options.reflection * (centroid - worst);
    const double f_r = safe_eval(objective, reflected);
    if (f_r < values[0]) {
      const Vector expanded = centroid + options.expansion * (reflected - centroid);
      const double f_e = safe_eval(objective, expanded);
      if (f_e < f_r) {
        simplex[n] = expanded;
        values[n] = f_e;
      } else {
        simplex[n] = reflected;
        values[n] = f_r;
      }
      continue;
    }
    if (f_r < values[n - 1]) {
      simplex[n] = reflected;
      values[n] = f_r;
      continue;
    }
    // Outside contraction when the reflection beat the worst point, inside otherwise.
    const bool outside = f_r < values[n];
    const Vector contracted = outside
                                  ? Vector(centroid + options.contraction * (reflected - centroid))
                                  : Vector(centroid + options.contraction * (worst - centroid));
    const double f_c = safe_eval(objective, contracted);
    if (f_c < (outside ? f_r : values[n])) {
      simplex[n] = contracted;
      values[n] = f_c;
      continue;
    }
    for (Index i = 1; i <= n; ++i) {
      simplex[i] = simplex[0] + options.shrink * (simplex[i] - simplex[0]);
      values[i] = safe_eval(objective, simplex[i]);
    }
  }
  sort_simplex();
  if (!std::isfinite(values[0])) {
    throw OptimizationFailureError("nelder_mead: objective was non-finite at every trial point");
  }
  result.argmin = simplex[0];
  result.value = values[0];
  result.iterations = iter;
  return result;
}

}  // namespace shapcond
