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

#include "shapcond/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "shapcond/coalition.hpp"
#include "shapcond/error.hpp"
#include "shapcond/parallel.hpp"
#include "shapcond/rng.hpp"
#include "shapcond/shapley.hpp"

namespace shapcond {
namespace {

int cos_count(const std::string& name, int m) {
  static const std::map<std::string, int> partial = {
      {"gam_one", 1}, {"gam_two", 2}, {"gam_three", 3}, {"gam_four", 4}, {"gam_five", 5}};
  if (auto it = partial.find(name); it != partial.end()) return it->second;
  if (name.rfind("gam_", 0) == 0) return m;
  return 0;
}

int interaction_count(const std::string& name) {
  const auto ends = [&](const char* suffix) {
    const std::string s(suffix);
    return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  if (ends("_some")) return 1;
  if (ends("_more")) return 2;
  if (ends("_many")) return 3;
  if (ends("_numerous")) return 4;
  return 0;
}

}  // namespace

const std::vector<std::string>& true_model_names() {
  static const std::vector<std::string> names = {
      "lm_no",     "lm_some",  "lm_more",   "lm_many",  "lm_numerous", "gam_one",  "gam_two",     "gam_three",
      "gam_four",  "gam_five", "gam_all",   "gam_some", "gam_more",    "gam_many", "gam_numerous"};
  return names;
}

std::string normalize_model_name(const std::string& name) {
  std::string n = name;
  const std::string suffix = "_interactions";
  if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0) {
    n.erase(n.size() - suffix.size());
  }
  const auto& names = true_model_names();
  if (std::find(names.begin(), names.end(), n) == names.end()) {
    throw ConfigError("unknown true model '" + name + "'");
  }
  return n;
}

double interaction_g(double a, double b) { return a * b + a * b * b + b * a * a; }

std::vector<ModelTerm> true_model_terms(const TrueModelSpec& spec, int m) {
  const std::string name = normalize_model_name(spec.name);
  if (m < 1 || m > 8) throw InvalidDimensionError("the simulation models are defined for 1 <= M <= 8");
  if (spec.beta.size() < static_cast<std::size_t>(m + 1)) throw ConfigError("beta needs M + 1 entries");
  const int n_cos = std::min(cos_count(name, m), m);
  const int n_inter = interaction_count(name);
  if (spec.gamma.size() < static_cast<std::size_t>(n_inter)) throw ConfigError("gamma has too few entries");
  if (2 * n_inter > m) {
    throw InvalidDimensionError("model '" + name + "' needs at least " + std::to_string(2 * n_inter) + " features");
  }
  std::vector<ModelTerm> terms;
  for (int j = 0; j < m; ++j) {
    terms.push_back({j < n_cos ? ModelTerm::Type::kCos : ModelTerm::Type::kLinear, j, j,
                     spec.beta[static_cast<std::size_t>(j + 1)]});
  }
  const bool gam = name.rfind("gam_", 0) == 0;
  for (int q = 0; q < n_inter; ++q) {
    terms.push_back({gam ? ModelTerm::Type::kG : ModelTerm::Type::kProduct, 2 * q, 2 * q + 1,
                     spec.gamma[static_cast<std::size_t>(q)]});
  }
  return terms;
}

namespace {

double term_value(const ModelTerm& t, const double* x) {
  switch (t.type) {
    case ModelTerm::Type::kLinear: return x[t.j];
    case ModelTerm::Type::kCos: return std::cos(x[t.j]);
    case ModelTerm::Type::kProduct: return x[t.j] * x[t.k];
    case ModelTerm::Type::kG: return interaction_g(x[t.j], x[t.k]);
  }
  return 0.0;
}

}  // namespace

double eval_true_model(const TrueModelSpec& spec, const Vector& x) {
  const int m = static_cast<int>(x.size());
  double out = spec.beta.at(0);
  for (const ModelTerm& t : true_model_terms(spec, m)) out += t.coefficient * term_value(t, x.data());
  return out;
}

Matrix ar1_covariance(int m, double rho) {
  Matrix s(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) s(i, j) = std::pow(rho, std::abs(i - j));
  }
  return s;
}

GaussianParams gaussian_data_params(const DataSpec& spec) {
  if (!(std::abs(spec.rho) < 1.0)) throw ConfigError("rho must satisfy |rho| < 1");
  if (spec.m < 1 || spec.m > kMaxFeatures) throw InvalidDimensionError("M out of range");
  return GaussianParams{Vector::Zero(spec.m), ar1_covariance(spec.m, spec.rho)};
}

BurrParams burr_data_params(const DataSpec& spec) {
  if (spec.m < 1 || static_cast<std::size_t>(spec.m) > spec.burr_b.size() ||
      static_cast<std::size_t>(spec.m) > spec.burr_r.size()) {
    throw InvalidDimensionError("Burr b and r need at least M entries");
  }
  BurrParams p;
  p.kappa = spec.kappa;
  p.b.resize(spec.m);
  p.r.resize(spec.m);
  for (int j = 0; j < spec.m; ++j) {
    p.b(j) = spec.burr_b[static_cast<std::size_t>(j)];
    p.r(j) = spec.burr_r[static_cast<std::size_t>(j)];
  }
  p.validate();
  return p;
}

namespace {

template <typename Draw>
SimData generate(const DataSpec& spec, const TrueModelSpec& model, Draw draw) {
  const Rng root(spec.seed);
  Rng train_rng = root.substream({hash_key("data"), 0});
  Rng test_rng = root.substream({hash_key("data"), 1});
  Rng noise_rng = root.substream({hash_key("noise"), 0});
  SimData out;
  out.x_train = draw(spec.n_train, train_rng);
  out.x_test = draw(spec.n_test, test_rng);
  out.y_train.resize(spec.n_train);
  out.y_test.resize(spec.n_test);
  for (Index i = 0; i < spec.n_train; ++i) {
    out.y_train(i) = eval_true_model(model, out.x_train.row(i).transpose()) + model.noise_sd * noise_rng.normal();
  }
  for (Index i = 0; i < spec.n_test; ++i) {
    out.y_test(i) = eval_true_model(model, out.x_test.row(i).transpose()) + model.noise_sd * noise_rng.normal();
  }
  return out;
}

}  // namespace

SimData gen_gaussian_data(const DataSpec& spec, const TrueModelSpec& model) {
  const GaussianParams p = gaussian_data_params(spec);
  const Matrix l = cholesky(p.sigma);
  return generate(spec, model, [&](Index n, Rng& rng) {
    Matrix z = sample_std_normal(rng, n, spec.m);
    return Matrix(z * l.transpose());
  });
}

SimData gen_burr_data(const DataSpec& spec, const TrueModelSpec& model) {
  const BurrParams p = burr_data_params(spec);
  return generate(spec, model, [&](Index n, Rng& rng) { return burr_sample(p, n, rng); });
}

SimData gen_data(const DataSpec& spec, const TrueModelSpec& model) {
  return spec.family == DataFamily::kGaussian ? gen_gaussian_data(spec, model) : gen_burr_data(spec, model);
}

PredictiveKind predictive_kind_from_name(const std::string& name) {
  if (name == "lm_formula") return PredictiveKind::kLmFormula;
  if (name == "oracle_basis_lm") return PredictiveKind::kOracleBasisLm;
  if (name == "ppr") return PredictiveKind::kPpr;
  if (name == "cart") return PredictiveKind::kCart;
  if (name == "knn") return PredictiveKind::kKnn;
  throw ConfigError("unknown predictive model '" + name + "'");
}

std::string predictive_kind_name(PredictiveKind kind) {
  switch (kind) {
    case PredictiveKind::kLmFormula: return "lm_formula";
    case PredictiveKind::kOracleBasisLm: return "oracle_basis_lm";
    case PredictiveKind::kPpr: return "ppr";
    case PredictiveKind::kCart: return "cart";
    case PredictiveKind::kKnn: return "knn";
  }
  return "unknown";
}

TermLinearModel::TermLinearModel(std::vector<ModelTerm> terms, const Matrix& x, const Vector& y) {
  // Split each g term into its three monomials so every coefficient is free.
  for (const ModelTerm& t : terms) {
    if (t.type == ModelTerm::Type::kG) {
      terms_.push_back({ModelTerm::Type::kProduct, t.j, t.k, 0.0});
      terms_.push_back({ModelTerm::Type::kG, t.j, t.k, 1.0});   // x_j x_k^2
      terms_.push_back({ModelTerm::Type::kG, t.k, t.j, 1.0});   // x_k x_j^2
    } else {
      terms_.push_back({t.type, t.j, t.k, 0.0});
    }
  }
  const Index n = x.rows();
  const Index p = static_cast<Index>(terms_.size());
  if (n <= p) throw InsufficientDataError("predictive model needs more rows than terms");
  Eigen::MatrixXd a(n, p + 1);
  a.col(0).setOnes();
  a.rightCols(p) = design(x);
  const Eigen::VectorXd sol = a.colPivHouseholderQr().solve(y);
  intercept_ = sol(0);
  coef_ = sol.tail(p);
}

Matrix TermLinearModel::design(const Matrix& x) const {
  Eigen::MatrixXd out(x.rows(), static_cast<Index>(terms_.size()));
  for (std::size_t c = 0; c < terms_.size(); ++c) {
    const ModelTerm& t = terms_[c];
    const auto a = x.col(t.j).array();
    const auto b = x.col(t.k).array();
    auto col = out.col(static_cast<Index>(c)).array();
    switch (t.type) {
      case ModelTerm::Type::kLinear: col = a; break;
      case ModelTerm::Type::kCos: col = a.cos(); break;
      case ModelTerm::Type::kProduct: col = a * b; break;
      // Within this model a kG entry stands for the single monomial x_j x_k^2.
      case ModelTerm::Type::kG: col = a * b * b; break;
    }
  }
  return out;
}

Vector TermLinearModel::predict(const Matrix& x) const {
  return (design(x) * coef_).array() + intercept_;
}

nlohmann::json TermLinearModel::summary() const {
  std::vector<double> coef(coef_.data(), coef_.data() + coef_.size());
  return {{"kind", "term_linear"}, {"intercept", intercept_}, {"coefficients", coef}};
}

namespace {

class RegressorPredictor : public PredictiveModel {
 public:
  explicit RegressorPredictor(std::unique_ptr<Regressor> r) : r_(std::move(r)) {}
  Vector predict(const Matrix& x) const override { return r_->predict(x); }
  nlohmann::json summary() const override { return r_->summary(); }

 private:
  std::unique_ptr<Regressor> r_;
};

}  // namespace

std::unique_ptr<PredictiveModel> fit_predictive_model(PredictiveKind kind, const TrueModelSpec& model,
                                                      const Matrix& x, const Vector& y, std::uint64_t seed) {
  switch (kind) {
    case PredictiveKind::kLmFormula:
    case PredictiveKind::kOracleBasisLm:
      return std::make_unique<TermLinearModel>(true_model_terms(model, static_cast<int>(x.cols())), x, y);
    case PredictiveKind::kPpr:
    case PredictiveKind::kCart:
    case PredictiveKind::kKnn: {
      RegressorSpec spec = regressor_spec_from_name(kind == PredictiveKind::kPpr ? "ppr" : kind == PredictiveKind::kCart ? "cart" : "knn");
      spec.seed = seed;
      return std::make_unique<RegressorPredictor>(fit_regressor(spec, x, y));
    }
  }
  throw ConfigError("unknown predictive model kind");
}

OracleResult true_shapley_oracle(const PredictiveModel& f, const DataParams& params, const Matrix& x_test,
                                 Index k, double phi0, std::uint64_t seed, int threads, double large_constant) {
  const int m = static_cast<int>(x_test.cols());
  const std::vector<Coalition> all = enumerate_coalitions(m);
  const Index n = x_test.rows();
  OracleResult out;
  out.v.resize(static_cast<Index>(all.size()), n);
  const Vector f_test = f.predict(x_test);
  std::vector<std::unique_ptr<GaussianConditioner>> conditioners(all.size());
  if (const auto* g = std::get_if<GaussianParams>(&params)) {
    if (g->dim() != m) throw ShapeMismatchError("oracle: parameter dimension mismatch");
    for (std::size_t c = 1; c + 1 < all.size(); ++c) conditioners[c] = std::make_unique<GaussianConditioner>(*g, all[c]);
  } else if (std::get<BurrParams>(params).dim() != m) {
    throw ShapeMismatchError("oracle: parameter dimension mismatch");
  }
  const Rng root(seed);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    const Vector x_star = x_test.row(static_cast<Index>(i)).transpose();
    out.v(0, static_cast<Index>(i)) = phi0;
    out.v(static_cast<Index>(all.size() - 1), static_cast<Index>(i)) = f_test(static_cast<Index>(i));
    for (std::size_t c = 1; c + 1 < all.size(); ++c) {
      const Coalition s = all[c];
      Rng rng = root.substream({hash_key("oracle"), static_cast<std::uint64_t>(i), s.bits()});
      const std::vector<int> obs = s.features();
      const std::vector<int> unobs = s.complement(m).features();
      const Vector x_s = subvector(x_star, obs);
      Matrix draws;
      if (conditioners[c]) {
        draws = conditioners[c]->sample(x_s, k, rng, true);
      } else {
        draws = burr_sample(burr_conditional(std::get<BurrParams>(params), s, x_s), k, rng);
      }
      Matrix full(draws.rows(), m);
      for (Index r = 0; r < draws.rows(); ++r) {
        for (int j = 0, a = 0; j < m; ++j) full(r, j) = s.contains(j) ? x_star(j) : draws(r, a++);
      }
      out.v(static_cast<Index>(c), static_cast<Index>(i)) = f.predict(full).mean();
    }
  });
  ContributionMatrix cm(m, n);
  cm.values = out.v;
  out.phi = solve_shapley_wls(cm, KernelWeightTable(m, large_constant)).phi;
  return out;
}

Matrix linear_gaussian_v(double b0, const Vector& b, const GaussianParams& params, const Matrix& x_test,
                         double phi0) {
  const int m = static_cast<int>(x_test.cols());
  const std::vector<Coalition> all = enumerate_coalitions(m);
  Matrix v(static_cast<Index>(all.size()), x_test.rows());
  for (std::size_t c = 0; c < all.size(); ++c) {
    const Coalition s = all[c];
    for (Index i = 0; i < x_test.rows(); ++i) {
      const Vector x_star = x_test.row(i).transpose();
      if (s.empty()) {
        v(static_cast<Index>(c), i) = phi0;
      } else if (s == Coalition::full(m)) {
        v(static_cast<Index>(c), i) = b0 + b.dot(x_star);
      } else {
        const std::vector<int> obs = s.features();
        const std::vector<int> unobs = s.complement(m).features();
        const GaussianParams cond = gaussian_conditional(params, s, subvector(x_star, obs));
        v(static_cast<Index>(c), i) = b0 + subvector(b, obs).dot(subvector(x_star, obs)) + subvector(b, unobs).dot(cond.mu);
      }
    }
  }
  return v;
}

MaeResult mae_metric(const Matrix& phi_true, const Matrix& phi_hat) {
  if (phi_true.rows() != phi_hat.rows() || phi_true.cols() != phi_hat.cols() || phi_true.rows() < 2) {
    throw ShapeMismatchError("mae_metric: matrices must have the same (M + 1) x N shape");
  }
  const Index m = phi_true.rows() - 1;
  MaeResult out;
  out.per_observation.resize(phi_true.cols());
  for (Index i = 0; i < phi_true.cols(); ++i) {
    out.per_observation(i) = (phi_true.col(i).tail(m) - phi_hat.col(i).tail(m)).cwiseAbs().sum() / static_cast<double>(m);
  }
  out.overall = phi_true.cols() > 0 ? out.per_observation.mean() : 0.0;
  return out;
}

double mse_v_metric(const Vector& f_values, const Matrix& v_hat) {
  if (v_hat.cols() != f_values.size()) throw ShapeMismatchError("mse_v_metric: column count must match f_values");
  const Index rows = v_hat.rows();
  // rows must be 2^M - 2 for some M >= 2.
  const Index total = rows + 2;
  if (rows < 2 || (total & (total - 1)) != 0) {
    throw ShapeMismatchError("mse_v_metric: v_hat must hold the 2^M - 2 nontrivial coalitions");
  }
  if (f_values.size() == 0) return 0.0;
  double s = 0.0;
  for (Index r = 0; r < rows; ++r) s += (v_hat.row(r).transpose() - f_values).squaredNorm();
  return s / (static_cast<double>(rows) * static_cast<double>(f_values.size()));
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ShapeMismatchError("spearman needs two equal-length samples of size >= 2");
  const std::vector<double> ra = average_ranks(a), rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace shapcond
