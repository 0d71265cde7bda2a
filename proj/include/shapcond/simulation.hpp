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

#ifndef SHAPCOND_SIMULATION_HPP_
#define SHAPCOND_SIMULATION_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "shapcond/burr.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/regressor.hpp"

namespace shapcond {

// Response models of the simulation studies. beta[0] is the intercept and
// beta[j] the coefficient of feature j; gamma holds the interaction weights.
struct TrueModelSpec {
  std::string name = "lm_no";
  std::vector<double> beta = {1.0, 0.2, -0.8, 1.0, 0.5, -0.8, 0.6, -0.7, -0.6};
  std::vector<double> gamma = {0.8, -1.0, -2.0, 1.5};
  double noise_sd = 1.0;
};

// Canonical model names; long forms such as "lm_no_interactions" are
// accepted by normalize_model_name.
const std::vector<std::string>& true_model_names();
// Throws ConfigError for unknown names.
std::string normalize_model_name(const std::string& name);

// The model's terms. Linear terms use x_j, cosine terms cos(x_j); products
// are x_j x_k, and "g" terms x_j x_k + x_j x_k^2 + x_k x_j^2.
struct ModelTerm {
  enum class Type { kLinear, kCos, kProduct, kG };
  Type type;
  int j = 0;
  int k = 0;
  double coefficient = 0.0;
};
std::vector<ModelTerm> true_model_terms(const TrueModelSpec& spec, int m);

// Noise-free response. Throws InvalidDimensionError when x has more than
// eight entries or too few for the model's terms.
double eval_true_model(const TrueModelSpec& spec, const Vector& x);
double interaction_g(double a, double b);

enum class DataFamily { kGaussian, kBurr };

struct DataSpec {
  DataFamily family = DataFamily::kGaussian;
  double rho = 0.0;
  double kappa = 1.0;
  std::vector<double> burr_b = {5, 4, 6, 5, 3, 6, 5, 5};
  std::vector<double> burr_r = {4, 3, 5, 2, 5, 3, 5, 1};
  int m = 8;
  Index n_train = 1000;
  Index n_test = 100;
  std::uint64_t seed = 1;
};

struct SimData {
  Matrix x_train;
  Vector y_train;
  Matrix x_test;
  Vector y_test;
};

// Sigma_ij = rho^|i - j|.
Matrix ar1_covariance(int m, double rho);
// Mean zero, AR(1) covariance. Throws ConfigError unless |rho| < 1.
GaussianParams gaussian_data_params(const DataSpec& spec);
// b and r truncated to the first M entries.
BurrParams burr_data_params(const DataSpec& spec);

// y = f_true(x) + noise_sd * N(0, 1); train and test draws use separate
// substreams of the seed.
SimData gen_gaussian_data(const DataSpec& spec, const TrueModelSpec& model);
SimData gen_burr_data(const DataSpec& spec, const TrueModelSpec& model);
SimData gen_data(const DataSpec& spec, const TrueModelSpec& model);

// The fitted model f being explained.
class PredictiveModel {
 public:
  virtual ~PredictiveModel() = default;
  virtual Vector predict(const Matrix& x) const = 0;
  virtual nlohmann::json summary() const = 0;
};

enum class PredictiveKind { kLmFormula, kOracleBasisLm, kPpr, kCart, kKnn };
PredictiveKind predictive_kind_from_name(const std::string& name);
std::string predictive_kind_name(PredictiveKind kind);

// lm_formula and oracle_basis_lm regress y by least squares on the true
// model's terms, with each g term split into its three monomials. The other
// kinds fit the corresponding regressor on the raw features with
// cross-validation.
std::unique_ptr<PredictiveModel> fit_predictive_model(PredictiveKind kind, const TrueModelSpec& model,
                                                      const Matrix& x, const Vector& y,
                                                      std::uint64_t seed = 1);

// Least-squares fit on a fixed set of model terms.
class TermLinearModel : public PredictiveModel {
 public:
  TermLinearModel(std::vector<ModelTerm> terms, const Matrix& x, const Vector& y);
  Vector predict(const Matrix& x) const override;
  nlohmann::json summary() const override;
  double intercept() const { return intercept_; }
  const Vector& coefficients() const { return coef_; }
  const std::vector<ModelTerm>& terms() const { return terms_; }

 private:
  Matrix design(const Matrix& x) const;
  std::vector<ModelTerm> terms_;
  double intercept_ = 0.0;
  Vector coef_;
};

using DataParams = std::variant<GaussianParams, BurrParams>;

struct OracleResult {
  Matrix v;    // 2^M x N_test
  Matrix phi;  // (M + 1) x N_test
};

// Ground-truth Shapley values: v(S) by Monte Carlo with k draws from the
// exact conditional distribution of the data-generating law (antithetic
// pairs for the Gaussian family), phi by the WLS solve. v(empty) = phi0 and
// v(M) = f(x*).
OracleResult true_shapley_oracle(const PredictiveModel& f, const DataParams& params, const Matrix& x_test,
                                 Index k, double phi0, std::uint64_t seed, int threads = 1,
                                 double large_constant = 1e6);

// Closed-form v(S) for an affine f(x) = b0 + b'x under Gaussian data:
// b0 + b_S' x*_S + b_Sbar' mu_{Sbar|S}.
Matrix linear_gaussian_v(double b0, const Vector& b, const GaussianParams& params, const Matrix& x_test,
                         double phi0);

struct MaeResult {
  double overall = 0.0;
  Vector per_observation;
};

// Mean over instances and features 1..M of |phi_true - phi_hat|; row 0
// (phi_0) is excluded.
MaeResult mae_metric(const Matrix& phi_true, const Matrix& phi_hat);

// v_hat holds the 2^M - 2 nontrivial coalitions (rows) for each instance
// (columns); f_values holds f at each instance.
double mse_v_metric(const Vector& f_values, const Matrix& v_hat);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace shapcond

#endif  // SHAPCOND_SIMULATION_HPP_
