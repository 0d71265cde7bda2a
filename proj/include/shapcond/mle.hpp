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

#ifndef SHAPCOND_MLE_HPP_
#define SHAPCOND_MLE_HPP_

#include <cstdint>

#include "shapcond/burr.hpp"
#include "shapcond/gh.hpp"
#include "shapcond/linalg.hpp"

namespace shapcond {

struct MleOptions {
  // Number of Nelder-Mead runs. The first starts from the moment-based
  // guess; later runs restart from the best point so far plus jitter.
  int starts = 3;
  double jitter = 0.1;
  // Per-run iteration cap; 0 leaves the Nelder-Mead default in place.
  int max_iter = 0;
  double tol = 1e-8;
  std::uint64_t seed = 20230101;
};

template <typename Params>
struct MleResult {
  Params params;
  double log_likelihood = 0.0;
  int num_parameters = 0;
  int evaluations = 0;
  // False when the last run hit its iteration cap; the best point seen is
  // still returned.
  bool converged = false;
};

int burr_num_parameters(int m);  // 2M + 1
int gh_num_parameters(int m);    // (M + 1)(M + 4) / 2

double burr_log_likelihood(const BurrParams& p, const Matrix& x);
double gh_log_likelihood(const GHParams& p, const Matrix& x);

// Throws DomainError if any value is not strictly positive.
MleResult<BurrParams> burr_mle_fit(const Matrix& x, const MleOptions& options = {});

// Starts from the Gaussian fit with lambda = 1, omega = 1 and beta = 0.
MleResult<GHParams> gh_mle_fit(const Matrix& x, const MleOptions& options = {});

// Unconstrained coordinates used by the optimiser, exposed for testing.
Vector burr_pack(const BurrParams& p);
BurrParams burr_unpack(const Vector& theta, int m);
Vector gh_pack(const GHParams& p);
GHParams gh_unpack(const Vector& theta, int m);

}  // namespace shapcond

#endif  // SHAPCOND_MLE_HPP_
