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

#ifndef SHAPCOND_SERIALIZE_HPP_
#define SHAPCOND_SERIALIZE_HPP_

#include <json.hpp>

#include "shapcond/burr.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/gh.hpp"
#include "shapcond/linalg.hpp"

namespace shapcond {

// JSON forms of fitted parameter sets. Keys are the symbol names (mu, sigma,
// kappa, b, r, lambda, omega, chi, psi, beta); matrices are arrays of rows.
nlohmann::json to_json_value(const Vector& v);
nlohmann::json to_json_value(const Matrix& m);
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const GaussianParams& p);
void from_json(const nlohmann::json& j, GaussianParams& p);
void to_json(nlohmann::json& j, const BurrParams& p);
void from_json(const nlohmann::json& j, BurrParams& p);
void to_json(nlohmann::json& j, const GHParams& p);
void from_json(const nlohmann::json& j, GHParams& p);
void to_json(nlohmann::json& j, const GHStarParams& p);
void from_json(const nlohmann::json& j, GHStarParams& p);

}  // namespace shapcond

#endif  // SHAPCOND_SERIALIZE_HPP_
