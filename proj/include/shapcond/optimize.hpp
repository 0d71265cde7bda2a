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

#ifndef SHAPCOND_OPTIMIZE_HPP_
#define SHAPCOND_OPTIMIZE_HPP_

#include <functional>

#include "shapcond/linalg.hpp"

namespace shapcond {

struct NelderMeadOptions {
  // 0 selects 2000 * dim.
  int max_iter = 0;
  // Stop once the simplex diameter, or the relative spread of the vertex
  // values, drops below tol.
  double tol = 1e-8;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // Initial edge length; 0 selects 0.1 * max|x0| (or 0.1 when x0 == 0).
  double initial_step = 0.0;
};

struct NelderMeadResult {
  Vector argmin;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free simplex minimisation. Non-finite objective values are
// treated as +infinity; if no finite value is ever seen the call throws
// OptimizationFailureError.
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& objective,
                             const Vector& x0, const NelderMeadOptions& options = {});

}  // namespace shapcond

#endif  // SHAPCOND_OPTIMIZE_HPP_
