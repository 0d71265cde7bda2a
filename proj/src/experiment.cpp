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

#include "shapcond/experiment.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "shapcond/coalition.hpp"
#include "shapcond/error.hpp"
#include "shapcond/log.hpp"
#include "shapcond/parallel.hpp"
#include "shapcond/regression.hpp"
#include "shapcond/rng.hpp"
#include "shapcond/samplers.hpp"
#include "shapcond/serialize.hpp"
#include "shapcond/shapley.hpp"
#include "shapcond/timer.hpp"

#ifndef SHAPCOND_VERSION
#define SHAPCOND_VERSION "unknown"
#endif

namespace shapcond {

using nlohmann::json;

const std::vector<MethodInfo>& method_registry() {
  static const std::vector<MethodInfo> registry = {
      {"independence", MethodFamily::kMonteCarlo, "training rows drawn without regard to x_S"},
      {"empirical", MethodFamily::kMonteCarlo, "Mahalanobis kernel weights on training rows"},
      {"gaussian", MethodFamily::kMonteCarlo, "multivariate Gaussian conditional"},
      {"copula", MethodFamily::kMonteCarlo, "Gaussian copula with empirical margins"},
      {"burr", MethodFamily::kMonteCarlo, "multivariate Burr fitted by maximum likelihood"},
      {"gh", MethodFamily::kMonteCarlo, "generalized hyperbolic fitted by maximum likelihood"},
      {"ctree", MethodFamily::kMonteCarlo, "conditional inference tree per coalition"},
      {"separate_lm", MethodFamily::kSeparate, "linear model per coalition"},
      {"separate_poly2", MethodFamily::kSeparate, "per-feature quadratic basis per coalition"},
      {"separate_lm_inter1", MethodFamily::kSeparate, "linear model with pairwise products per coalition"},
      {"separate_poly_inter2", MethodFamily::kSeparate, "full degree-2 polynomial per coalition"},
      {"separate_knn", MethodFamily::kSeparate, "k nearest neighbours per coalition, k by CV"},
      {"separate_cart", MethodFamily::kSeparate, "pruned regression tree per coalition"},
      {"separate_ppr", MethodFamily::kSeparate, "projection pursuit per coalition, terms by CV"},
      {"separate_ppr_fixed", MethodFamily::kSeparate, "projection pursuit per coalition, |S| terms"},
      {"surrogate_lm", MethodFamily::kSurrogate, "one linear model on the augmented data"},
      {"surrogate_poly2", MethodFamily::kSurrogate, "per-feature quadratic basis on the augmented data"},
      {"surrogate_lm_inter1", MethodFamily::kSurrogate, "pairwise products on the augmented data"},
      {"surrogate_poly_inter2", MethodFamily::kSurrogate, "degree-2 polynomial on the augmented data"},
      {"surrogate_knn", MethodFamily::kSurrogate, "k nearest neighbours on the augmented data"},
      {"surrogate_cart", MethodFamily::kSurrogate, "pruned regression tree on the augmented data"},
      {"surrogate_ppr", MethodFamily::kSurrogate, "projection pursuit on the augmented data"},
  };
  return registry;
}

const MethodInfo& find_method(const std::string& name) {
  for (const MethodInfo& m : method_registry()) {
    if (m.name == name) return m;
  }
  throw ConfigError("unknown method '" + name + "' (see list-methods)");
}

std::string family_name(MethodFamily family) {
  switch (family) {
    case MethodFamily::kMonteCarlo: return "monte_carlo";
    case MethodFamily::kSeparate: return "separate";
    case MethodFamily::kSurrogate: return "surrogate";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ConfigError("config: at least one method is required");
  std::set<std::string> seen;
  for (const MethodSpec& m : methods) {
    find_method(m.name);
    if (!seen.insert(m.name).second) throw ConfigError("config: method '" + m.name + "' listed twice");
  }
  if (data.m < 1 || data.m > kMaxFeatures) throw ConfigError("config: data.m out of range");
  if (data.n_train < 2) throw ConfigError("config: data.n_train must be at least 2");
  if (data.n_test < 1) throw ConfigError("config: data.n_test must be positive");
  if (data.family == DataFamily::kGaussian && !(std::abs(data.rho) < 1.0)) {
    throw ConfigError("config: data.rho must satisfy |rho| < 1");
  }
  if (data.family == DataFamily::kBurr && !(data.kappa > 0.0)) throw ConfigError("config: data.kappa must be positive");
  if (k < 1) throw ConfigError("config: K must be positive");
  if (oracle_k < 2) throw ConfigError("config: oracle_K must be at least 2");
  if (!(large_constant > 0.0)) throw ConfigError("config: large_constant must be positive");
  if (row_cap < 1) throw ConfigError("config: row_cap must be positive");
  if (truth == TruthKind::kAnalyticLinear && data.family != DataFamily::kGaussian) {
    throw ConfigError("config: analytic_linear truth needs Gaussian data");
  }
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

std::string truth_name(TruthKind t) { return t == TruthKind::kOracle ? "oracle" : "analytic_linear"; }

}  // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j,
                 {"seed", "data", "true_model", "predictive", "methods", "K", "oracle_K", "oracle_seed", "truth",
                  "large_constant", "row_cap", "output_dir", "dump_samples"},
                 "top level");
  ExperimentConfig c;
  if (!j.contains("seed")) throw ConfigError("config: 'seed' is required");
  c.seed = get_or<std::uint64_t>(j, "seed", 1);
  if (j.contains("data")) {
    const json& d = j.at("data");
    reject_unknown(d, {"family", "rho", "kappa", "burr_b", "burr_r", "m", "n_train", "n_test"}, "data");
    const std::string family = get_or<std::string>(d, "family", "gaussian");
    if (family == "gaussian") {
      c.data.family = DataFamily::kGaussian;
    } else if (family == "burr") {
      c.data.family = DataFamily::kBurr;
    } else {
      throw ConfigError("config: data.family must be 'gaussian' or 'burr'");
    }
    c.data.rho = get_or(d, "rho", c.data.rho);
    c.data.kappa = get_or(d, "kappa", c.data.kappa);
    c.data.burr_b = get_or(d, "burr_b", c.data.burr_b);
    c.data.burr_r = get_or(d, "burr_r", c.data.burr_r);
    c.data.m = get_or(d, "m", c.data.m);
    c.data.n_train = get_or<Index>(d, "n_train", c.data.n_train);
    c.data.n_test = get_or<Index>(d, "n_test", c.data.n_test);
  }
  if (j.contains("true_model")) {
    const json& t = j.at("true_model");
    reject_unknown(t, {"name", "beta", "gamma", "noise_sd"}, "true_model");
    c.true_model.name = normalize_model_name(get_or<std::string>(t, "name", c.true_model.name));
    c.true_model.beta = get_or(t, "beta", c.true_model.beta);
    c.true_model.gamma = get_or(t, "gamma", c.true_model.gamma);
    c.true_model.noise_sd = get_or(t, "noise_sd", c.true_model.noise_sd);
  }
  c.predictive = predictive_kind_from_name(get_or<std::string>(j, "predictive", "lm_formula"));
  if (!j.contains("methods") || !j.at("methods").is_array()) throw ConfigError("config: 'methods' must be a list");
  for (const json& m : j.at("methods")) {
    MethodSpec spec;
    if (m.is_string()) {
      spec.name = m.get<std::string>();
    } else if (m.is_object() && m.contains("name") && m.at("name").is_string()) {
      spec.name = m.at("name").get<std::string>();
      spec.options = m;
      spec.options.erase("name");
    } else {
      throw ConfigError("config: each method must be a name or an object with a 'name'");
    }
    c.methods.push_back(std::move(spec));
  }
  c.k = get_or<Index>(j, "K", c.k);
  c.oracle_k = get_or<Index>(j, "oracle_K", c.oracle_k);
  c.oracle_seed = get_or<std::uint64_t>(j, "oracle_seed", 0);
  const std::string truth = get_or<std::string>(j, "truth", "oracle");
  if (truth == "oracle") {
    c.truth = TruthKind::kOracle;
  } else if (truth == "analytic_linear") {
    c.truth = TruthKind::kAnalyticLinear;
  } else {
    throw ConfigError("config: truth must be 'oracle' or 'analytic_linear'");
  }
  c.large_constant = get_or(j, "large_constant", c.large_constant);
  c.row_cap = get_or<Index>(j, "row_cap", c.row_cap);
  c.output_dir = get_or(j, "output_dir", c.output_dir);
  c.dump_samples = get_or(j, "dump_samples", c.dump_samples);
  c.data.seed = c.seed;
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const ExperimentConfig& c) {
  json methods = json::array();
  for (const MethodSpec& m : c.methods) {
    if (m.options.empty()) {
      methods.push_back(m.name);
    } else {
      json o = m.options;
      o["name"] = m.name;
      methods.push_back(o);
    }
  }
  json data = {{"family", c.data.family == DataFamily::kGaussian ? "gaussian" : "burr"},
               {"m", c.data.m},
               {"n_train", c.data.n_train},
               {"n_test", c.data.n_test}};
  if (c.data.family == DataFamily::kGaussian) {
    data["rho"] = c.data.rho;
  } else {
    data["kappa"] = c.data.kappa;
    data["burr_b"] = c.data.burr_b;
    data["burr_r"] = c.data.burr_r;
  }
  return {{"seed", c.seed},
          {"data", data},
          {"true_model",
           {{"name", c.true_model.name},
            {"beta", c.true_model.beta},
            {"gamma", c.true_model.gamma},
            {"noise_sd", c.true_model.noise_sd}}},
          {"predictive", predictive_kind_name(c.predictive)},
          {"methods", methods},
          {"K", c.k},
          {"oracle_K", c.oracle_k},
          {"oracle_seed", c.oracle_seed},
          {"truth", truth_name(c.truth)},
          {"large_constant", c.large_constant},
          {"row_cap", c.row_cap},
          {"output_dir", c.output_dir},
          {"dump_samples", c.dump_samples}};
}

const MethodOutcome& ExperimentResult::method(const std::string& name) const {
  for (const MethodOutcome& m : methods) {
    if (m.name == name) return m;
  }
  throw ConfigError("no result for method '" + name + "'");
}

bool ExperimentResult::all_ok() const {
  return std::all_of(methods.begin(), methods.end(), [](const MethodOutcome& m) { return m.ok; });
}

namespace {

std::vector<Coalition> nontrivial(int m) {
  std::vector<Coalition> all = enumerate_coalitions(m);
  return {all.begin() + 1, all.end() - 1};
}

MleOptions mle_options(const json& o, MleOptions d) {
  reject_unknown(o, {"K", "starts", "jitter", "max_iter", "tol", "seed"}, "method options");
  d.starts = get_or(o, "starts", d.starts);
  d.jitter = get_or(o, "jitter", d.jitter);
  d.max_iter = get_or(o, "max_iter", d.max_iter);
  d.tol = get_or(o, "tol", d.tol);
  d.seed = get_or(o, "seed", d.seed);
  return d;
}

std::unique_ptr<MonteCarloMethod> make_sampler(const MethodSpec& spec) {
  const json& o = spec.options;
  if (spec.name == "independence" || spec.name == "gaussian" || spec.name == "copula") {
    reject_unknown(o, {"K"}, spec.name + " options");
    if (spec.name == "independence") return std::make_unique<IndependenceSampler>();
    if (spec.name == "gaussian") return std::make_unique<GaussianSampler>();
    return std::make_unique<CopulaSampler>();
  }
  if (spec.name == "empirical") {
    reject_unknown(o, {"K", "sigma", "eta"}, "empirical options");
    return std::make_unique<EmpiricalSampler>(get_or(o, "sigma", 0.1), get_or(o, "eta", 0.95));
  }
  if (spec.name == "burr") return std::make_unique<BurrSampler>(mle_options(o, MleOptions{}));
  if (spec.name == "gh") {
    MleOptions d;
    d.starts = 2;
    d.max_iter = 2000;
    return std::make_unique<GHSampler>(mle_options(o, d));
  }
  if (spec.name == "ctree") {
    reject_unknown(o, {"K", "alpha", "minbucket"}, "ctree options");
    CtreeOptions c;
    c.alpha = get_or(o, "alpha", c.alpha);
    c.minbucket = get_or<Index>(o, "minbucket", c.minbucket);
    return std::make_unique<CtreeSampler>(c);
  }
  throw ConfigError("unknown Monte Carlo method '" + spec.name + "'");
}

json sampler_summary(const MonteCarloMethod& method, const std::vector<Coalition>& coalitions) {
  if (const auto* g = dynamic_cast<const GaussianSampler*>(&method)) return json(g->params());
  if (const auto* c = dynamic_cast<const CopulaSampler*>(&method)) return {{"gaussian", json(c->model().gauss)}};
  if (const auto* b = dynamic_cast<const BurrSampler*>(&method)) {
    const auto& f = b->fit();
    return {{"params", json(f.params)},
            {"log_likelihood", f.log_likelihood},
            {"num_parameters", f.num_parameters},
            {"evaluations", f.evaluations},
            {"converged", f.converged}};
  }
  if (const auto* g = dynamic_cast<const GHSampler*>(&method)) {
    const auto& f = g->fit();
    return {{"params", json(f.params)},
            {"log_likelihood", f.log_likelihood},
            {"num_parameters", f.num_parameters},
            {"evaluations", f.evaluations},
            {"converged", f.converged}};
  }
  if (const auto* t = dynamic_cast<const CtreeSampler*>(&method)) {
    json leaves = json::object();
    for (Coalition s : coalitions) leaves[std::to_string(s.bits())] = t->tree(s).num_leaves();
    return {{"leaves_by_coalition_bits", leaves}};
  }
  return json::object();
}

RegressorSpec regression_spec(const MethodSpec& spec, MethodFamily family, std::uint64_t seed) {
  const std::string prefix = family == MethodFamily::kSeparate ? "separate_" : "surrogate_";
  RegressorSpec r = regressor_spec_from_name(spec.name.substr(prefix.size()));
  r.seed = seed;
  if (family == MethodFamily::kSurrogate) r.cv_max_rows = 20'000;
  const json& o = spec.options;
  reject_unknown(o,
                 {"degree", "order", "ppr_terms", "ppr_grid", "knn_grid", "cart_cp", "cart_minsplit",
                  "cart_minbucket", "folds", "cv_max_rows"},
                 spec.name + " options");
  r.degree = get_or(o, "degree", r.degree);
  r.order = get_or(o, "order", r.order);
  r.ppr_terms = get_or(o, "ppr_terms", r.ppr_terms);
  r.ppr_grid = get_or(o, "ppr_grid", r.ppr_grid);
  r.knn_grid = get_or(o, "knn_grid", r.knn_grid);
  r.cart_cp = get_or(o, "cart_cp", r.cart_cp);
  r.cart_minsplit = get_or<Index>(o, "cart_minsplit", r.cart_minsplit);
  r.cart_minbucket = get_or<Index>(o, "cart_minbucket", r.cart_minbucket);
  r.folds = get_or(o, "folds", r.folds);
  r.cv_max_rows = get_or<Index>(o, "cv_max_rows", r.cv_max_rows);
  r.validate();
  return r;
}

class ProcessTimer {
 public:
  explicit ProcessTimer(double* sink) : sink_(sink), start_(process_cpu_seconds()) {}
  ~ProcessTimer() { *sink_ += process_cpu_seconds() - start_; }
  ProcessTimer(const ProcessTimer&) = delete;
  ProcessTimer& operator=(const ProcessTimer&) = delete;

 private:
  double* sink_;
  double start_;
};

void run_monte_carlo(const MethodSpec& spec, const ExperimentResult& r, const PredictiveModel& f, int threads,
                     MethodOutcome& out) {
  const ExperimentConfig& c = r.config;
  const int m = c.data.m;
  const std::vector<Coalition> all = enumerate_coalitions(m);
  const std::vector<Coalition> coalitions = nontrivial(m);
  const Index k = get_or<Index>(spec.options, "K", c.k);
  if (k < 1) throw ConfigError(spec.name + ": K must be positive");
  std::unique_ptr<MonteCarloMethod> method = make_sampler(spec);
  {
    ProcessTimer t(&out.t_train);
    method->train(r.data.x_train, coalitions);
  }
  const Index n = r.data.x_test.rows();
  out.v.resize(static_cast<Index>(all.size()), n);
  std::vector<SamplingTimes> times(static_cast<std::size_t>(n));
  std::vector<std::string> dumps(c.dump_samples ? static_cast<std::size_t>(n) : 0);
  const BatchPredictor predictor = [&f](const Matrix& x) { return f.predict(x); };
  const Rng root = Rng(c.seed).substream({hash_key("method"), hash_key(spec.name)});
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    const Vector x_star = r.data.x_test.row(static_cast<Index>(i)).transpose();
    const Rng stream = root.substream({static_cast<std::uint64_t>(i)});
    SampleSink sink;
    std::ostringstream dump;
    bool header = true;
    if (c.dump_samples) {
      sink = [&](Coalition s, const WeightedSamples& w) {
        write_samples_csv(dump, m, s, x_star, w, header);
        header = false;
      };
    }
    out.v.col(static_cast<Index>(i)) =
        estimate_contributions(predictor, *method, x_star, all, k, r.phi0, stream, &times[i], sink);
    if (c.dump_samples) dumps[i] = dump.str();
  });
  for (const SamplingTimes& t : times) {
    out.t_generate += t.generate;
    out.t_predict += t.predict;
  }
  if (c.dump_samples) {
    const std::filesystem::path dir = std::filesystem::path(c.output_dir) / "samples" / spec.name;
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < dumps.size(); ++i) {
      const std::filesystem::path p = dir / ("observation_" + std::to_string(i + 1) + ".csv");
      std::ofstream os(p, std::ios::binary);
      if (!(os << dumps[i])) throw IoError("cannot write '" + p.string() + "'");
    }
  }
  out.model = sampler_summary(*method, coalitions);
}

void run_regression(const MethodSpec& spec, MethodFamily family, const ExperimentResult& r, const Vector& z,
                    int threads, MethodOutcome& out) {
  const ExperimentConfig& c = r.config;
  const RegressorSpec rs = regression_spec(spec, family, c.seed ^ hash_key(spec.name));
  if (family == MethodFamily::kSeparate) {
    SeparateModelSet models;
    {
      ProcessTimer t(&out.t_train);
      models = fit_separate(rs, r.data.x_train, z, threads);
    }
    ProcessTimer t(&out.t_predict);
    out.v = predict_v(models, r.data.x_test, r.f_test, r.phi0);
    out.model = summarize(models);
  } else {
    SurrogateModel model;
    {
      ProcessTimer t(&out.t_train);
      const AugmentedDataset aug = build_augmented(r.data.x_train, z, c.row_cap);
      model = fit_surrogate(rs, aug);
    }
    ProcessTimer t(&out.t_predict);
    out.v = predict_v(model, r.data.x_test, r.f_test, r.phi0);
    out.model = summarize(model);
  }
}

Matrix analytic_linear_phi(const ExperimentResult& r, const PredictiveModel& f, const ShapleySolver& solver) {
  const auto* lin = dynamic_cast<const TermLinearModel*>(&f);
  const int m = r.config.data.m;
  if (lin == nullptr) throw ConfigError("analytic_linear truth needs a lm_formula or oracle_basis_lm model");
  Vector b = Vector::Zero(m);
  for (std::size_t t = 0; t < lin->terms().size(); ++t) {
    const ModelTerm& term = lin->terms()[t];
    if (term.type != ModelTerm::Type::kLinear) throw ConfigError("analytic_linear truth needs an affine model");
    b(term.j) += lin->coefficients()(static_cast<Index>(t));
  }
  ContributionMatrix v(m, r.data.x_test.rows());
  v.values = linear_gaussian_v(lin->intercept(), b, gaussian_data_params(r.config.data), r.data.x_test, r.phi0);
  return solver.solve(v).phi;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int threads) {
  config.validate();
  if (threads < 1) threads = 1;
  ExperimentResult r;
  r.config = config;
  r.config.data.seed = config.seed;
  r.threads = threads;
  const ExperimentConfig& c = r.config;
  const int m = c.data.m;
  // Refuse oversized augmented data before any work is done.
  for (const MethodSpec& spec : c.methods) {
    if (find_method(spec.name).family != MethodFamily::kSurrogate) continue;
    const Index rows = c.data.n_train * ((Index{1} << m) - 2);
    if (rows > c.row_cap) {
      throw MemoryGuardError(spec.name + ": augmented data would have " + std::to_string(rows) +
                             " rows (N = " + std::to_string(c.data.n_train) + ", M = " + std::to_string(m) +
                             "), above row_cap = " + std::to_string(c.row_cap));
    }
  }
  true_model_terms(c.true_model, m);

  r.data = gen_data(c.data, c.true_model);
  const std::unique_ptr<PredictiveModel> f =
      fit_predictive_model(c.predictive, c.true_model, r.data.x_train, r.data.y_train,
                           Rng(c.seed).substream({hash_key("predictive")}).seed());
  r.predictive_model = f->summary();
  const Vector z = f->predict(r.data.x_train);
  r.phi0 = z.mean();
  r.f_test = f->predict(r.data.x_test);

  const ShapleySolver solver(KernelWeightTable(m, c.large_constant));
  {
    const double start = wall_seconds();
    if (c.truth == TruthKind::kAnalyticLinear) {
      r.truth_phi = analytic_linear_phi(r, *f, solver);
    } else {
      const DataParams params = c.data.family == DataFamily::kGaussian ? DataParams(gaussian_data_params(c.data))
                                                                      : DataParams(burr_data_params(c.data));
      const std::uint64_t oracle_seed =
          c.oracle_seed != 0 ? c.oracle_seed : Rng(c.seed).substream({hash_key("oracle")}).seed();
      r.truth_phi = true_shapley_oracle(*f, params, r.data.x_test, c.oracle_k, r.phi0, oracle_seed, threads,
                                        c.large_constant)
                        .phi;
    }
    r.t_truth = wall_seconds() - start;
  }

  const double loop_start = wall_seconds();
  for (const MethodSpec& spec : c.methods) {
    MethodOutcome out;
    out.name = spec.name;
    out.family = find_method(spec.name).family;
    try {
      if (out.family == MethodFamily::kMonteCarlo) {
        run_monte_carlo(spec, r, *f, threads, out);
      } else {
        run_regression(spec, out.family, r, z, threads, out);
      }
      ContributionMatrix v(m, out.v.cols());
      v.values = out.v;
      {
        ProcessTimer t(&out.t_predict);
        out.phi = solver.solve(v).phi;
      }
      const MaeResult mae = mae_metric(r.truth_phi, out.phi);
      out.mae = mae.overall;
      out.mae_per_observation = mae.per_observation;
      out.mse_v = m >= 2 ? mse_v_metric(r.f_test, out.v.middleRows(1, out.v.rows() - 2)) : 0.0;
      out.ok = true;
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
      warn("method " + spec.name + " failed: " + out.error);
    }
    r.methods.push_back(std::move(out));
  }
  r.method_loop_wall = wall_seconds() - loop_start;
  return r;
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + p.string() + "' for writing");
  os << text;
  if (!os) throw IoError("write failed for '" + p.string() + "'");
}

}  // namespace

void write_artifacts(const ExperimentResult& r, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const int m = r.config.data.m;

  std::ostringstream phi;
  phi << "method,observation,feature,phi\n";
  const auto put_phi = [&](const std::string& name, const Matrix& p) {
    for (Index i = 0; i < p.cols(); ++i) {
      for (Index j = 0; j <= m; ++j) {
        phi << name << ',' << i + 1 << ',' << j << ',' << format_number(p(j, i)) << '\n';
      }
    }
  };
  put_phi("truth", r.truth_phi);
  std::ostringstream mae;
  mae << "method,observation,mae\n";
  std::ostringstream summary;
  summary << "method,mae,mse_v,t_train,t_generate,t_predict\n";
  for (const MethodOutcome& o : r.methods) {
    if (!o.ok) continue;
    put_phi(o.name, o.phi);
    for (Index i = 0; i < o.mae_per_observation.size(); ++i) {
      mae << o.name << ',' << i + 1 << ',' << format_number(o.mae_per_observation(i)) << '\n';
    }
    summary << o.name << ',' << format_number(o.mae) << ',' << format_number(o.mse_v) << ','
            << format_number(o.t_train) << ',' << format_number(o.t_generate) << ',' << format_number(o.t_predict)
            << '\n';
  }
  write_file(dir / "shapley_values.csv", phi.str());
  write_file(dir / "mae.csv", mae.str());
  write_file(dir / "summary.csv", summary.str());

  json statuses = json::array();
  json models = {{"predictive", r.predictive_model}, {"methods", json::object()}};
  for (const MethodOutcome& o : r.methods) {
    json s = {{"method", o.name}, {"family", family_name(o.family)}, {"status", o.ok ? "ok" : "failed"}};
    if (!o.ok) s["error"] = o.error;
    statuses.push_back(s);
    if (o.ok) models["methods"][o.name] = o.model;
  }
  const bool cpu = cpu_clock_available();
  const json manifest = {
      {"config", config_to_json(r.config)},
      {"versions",
       {{"shapcond", SHAPCOND_VERSION},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                              std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
        {"compiler", __VERSION__}}},
      {"threads", r.threads},
      {"timing",
       {{"source", cpu ? "cpu_time" : "wall_time_fallback"},
        {"wall_time_fallback", !cpu},
        {"truth_wall_seconds", r.t_truth},
        {"method_loop_wall_seconds", r.method_loop_wall}}},
      {"phi0", r.phi0},
      {"complete", r.all_ok()},
      {"methods", statuses}};
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  write_file(dir / "models.json", models.dump(2) + "\n");
}

}  // namespace shapcond
