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

#ifndef SHAPCOND_REGRESSION_HPP_
#define SHAPCOND_REGRESSION_HPP_

#include <memory>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/regressor.hpp"

namespace shapcond {

// One fitted g_S per nontrivial coalition, each taking x_S (members in
// increasing feature order) as input.
struct SeparateModelSet {
  int num_features = 0;
  std::unordered_map<std::uint32_t, std::unique_ptr<Regressor>> models;

  std::size_t size() const { return models.size(); }
  const Regressor& at(Coalition s) const { return *models.at(s.bits()); }
};

// Fits spec on (x_S, z) for every nontrivial coalition. z holds the model
// predictions f(x) on the training rows, computed once by the caller.
// Failures are rethrown with the coalition named in the message.
SeparateModelSet fit_separate(const RegressorSpec& spec, const Matrix& x_train, const Vector& z,
                              int threads = 1);

// Augmented training data: row i * (2^M - 2) + c holds observation i under
// the c-th nontrivial coalition S as [x o I(S), I(Sbar)], with response z_i.
struct AugmentedDataset {
  int num_features = 0;
  Matrix x;
  Vector z;

  Index num_rows() const { return x.rows(); }
};

inline constexpr Index kDefaultAugmentedRowCap = 10'000'000;

// Throws MemoryGuardError when N (2^M - 2) exceeds row_cap.
AugmentedDataset build_augmented(const Matrix& x_train, const Vector& z,
                                 Index row_cap = kDefaultAugmentedRowCap);

// [x o I(S), I(Sbar)] for one instance.
Vector augment(const Vector& x, Coalition s);

struct SurrogateModel {
  int num_features = 0;
  std::unique_ptr<Regressor> model;
};

// Mask columns enter polynomial bases linearly (spec.linear_tail is set to M
// for poly and poly_inter kinds).
SurrogateModel fit_surrogate(const RegressorSpec& spec, const AugmentedDataset& aug);

// One contribution column per instance: nontrivial coalitions from the
// fitted models, v(empty) = phi0 and v(M) = f(x*) pinned. f_star holds f at
// each instance. Result is 2^M x N_test in enumeration order.
Matrix predict_v(const SeparateModelSet& models, const Matrix& x_star, const Vector& f_star, double phi0);
Matrix predict_v(const SurrogateModel& model, const Matrix& x_star, const Vector& f_star, double phi0);

nlohmann::json summarize(const SeparateModelSet& models);
nlohmann::json summarize(const SurrogateModel& model);

}  // namespace shapcond

#endif  // SHAPCOND_REGRESSION_HPP_
