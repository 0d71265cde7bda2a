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

#include "shapcond/serialize.hpp"

#include "shapcond/error.hpp"

namespace shapcond {

using nlohmann::json;

json to_json_value(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json_value(const Matrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a JSON array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected a JSON array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = rows == 0 ? 0 : static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ConfigError("matrix rows must all have the same length");
    }
    for (Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

void to_json(json& j, const GaussianParams& p) {
  j = json{{"mu", to_json_value(p.mu)}, {"sigma", to_json_value(p.sigma)}};
}

void from_json(const json& j, GaussianParams& p) {
  p.mu = vector_from_json(j.at("mu"));
  p.sigma = matrix_from_json(j.at("sigma"));
}

void to_json(json& j, const BurrParams& p) {
  j = json{{"kappa", p.kappa}, {"b", to_json_value(p.b)}, {"r", to_json_value(p.r)}};
}

void from_json(const json& j, BurrParams& p) {
  p.kappa = j.at("kappa").get<double>();
  p.b = vector_from_json(j.at("b"));
  p.r = vector_from_json(j.at("r"));
}

void to_json(json& j, const GHParams& p) {
  j = json{{"lambda", p.lambda},
           {"omega", p.omega},
           {"mu", to_json_value(p.mu)},
           {"sigma", to_json_value(p.sigma)},
           {"beta", to_json_value(p.beta)}};
}

void from_json(const json& j, GHParams& p) {
  p.lambda = j.at("lambda").get<double>();
  p.omega = j.at("omega").get<double>();
  p.mu = vector_from_json(j.at("mu"));
  p.sigma = matrix_from_json(j.at("sigma"));
  p.beta = vector_from_json(j.at("beta"));
}

void to_json(json& j, const GHStarParams& p) {
  j = json{{"lambda", p.lambda},
           {"chi", p.chi},
           {"psi", p.psi},
           {"mu", to_json_value(p.mu)},
           {"sigma", to_json_value(p.sigma)},
           {"beta", to_json_value(p.beta)}};
}

void from_json(const json& j, GHStarParams& p) {
  p.lambda = j.at("lambda").get<double>();
  p.chi = j.at("chi").get<double>();
  p.psi = j.at("psi").get<double>();
  p.mu = vector_from_json(j.at("mu"));
  p.sigma = matrix_from_json(j.at("sigma"));
  p.beta = vector_from_json(j.at("beta"));
}

}  // namespace shapcond
