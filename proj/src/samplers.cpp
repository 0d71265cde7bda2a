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

#include "shapcond/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "shapcond/error.hpp"
#include "shapcond/log.hpp"
#include "shapcond/special.hpp"
#include "shapcond/timer.hpp"

namespace shapcond {
namespace {

Matrix select_rows_cols(const Matrix& x, const std::vector<Index>& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Index>(i), static_cast<Index>(c)) = x(rows[i], cols[c]);
    }
  }
  return out;
}

void require_training(const Matrix& x, const char* who) {
  if (x.rows() < 1) throw InsufficientDataError(std::string(who) + ": empty training set");
}

Vector observed_values(const Vector& x_star, Coalition s) {
  return subvector(x_star, s.features());
}

WeightedSamples unit_weighted(Matrix samples) {
  WeightedSamples out;
  out.weights = Vector::Ones(samples.rows());
  out.samples = std::move(samples);
  return out;
}

std::atomic<bool> g_empirical_warned{false};

}  // namespace

WeightedSamples independence_draw(const Matrix& x_train, Coalition s, Index k, Rng& rng) {
  require_training(x_train, "independence");
  const std::vector<int> cols = s.complement(static_cast<int>(x_train.cols())).features();
  std::vector<Index> rows(static_cast<std::size_t>(k));
  for (auto& r : rows) r = static_cast<Index>(rng.below(static_cast<std::uint64_t>(x_train.rows())));
  return unit_weighted(select_rows_cols(x_train, rows, cols));
}

void IndependenceSampler::train(const Matrix& x_train, const std::vector<Coalition>&) {
  require_training(x_train, "independence");
  x_ = x_train;
}

WeightedSamples IndependenceSampler::draw(Coalition s, const Vector&, Index k, Rng& rng) const {
  return independence_draw(x_, s, k, rng);
}

EmpiricalWeights empirical_weights(const Matrix& x_train, const Matrix& sigma_ss_inv, Coalition s,
                                   const Vector& x_star, double sigma, double eta) {
  require_training(x_train, "empirical");
  if (!(sigma > 0.0)) throw DomainError("empirical: sigma must be positive");
  if (!(eta > 0.0) || eta > 1.0) throw DomainError("empirical: eta must lie in (0, 1]");
  const std::vector<int> obs = s.features();
  if (obs.empty()) throw DomainError("empirical: coalition must be nonempty");
  const Index n = x_train.rows();
  const Index q = static_cast<Index>(obs.size());
  const Vector xs = subvector(x_star, obs);
  std::vector<double> d2(static_cast<std::size_t>(n));
  Vector diff(q);
  for (Index i = 0; i < n; ++i) {
    for (Index a = 0; a < q; ++a) diff(a) = xs(a) - x_train(i, obs[static_cast<std::size_t>(a)]);
    d2[static_cast<std::size_t>(i)] = diff.dot(sigma_ss_inv * diff) / static_cast<double>(q);
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return d2[static_cast<std::size_t>(a)] < d2[static_cast<std::size_t>(b)]; });
  std::vector<double> w(static_cast<std::size_t>(n));
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    w[static_cast<std::size_t>(i)] = std::exp(-d2[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] / (2.0 * sigma * sigma));
    total += w[static_cast<std::size_t>(i)];
  }
  EmpiricalWeights out;
  if (!(total > 0.0)) {
    if (!g_empirical_warned.exchange(true)) {
      warn("empirical: all kernel weights underflowed; using the nearest training row");
    }
    out.rows = {order.front()};
    out.weights = Vector::Ones(1);
    return out;
  }
  Index keep = n;
  if (eta < 1.0) {
    double cum = 0.0;
    for (Index i = 0; i < n; ++i) {
      cum += w[static_cast<std::size_t>(i)];
      if (cum / total > eta) {
        keep = i + 1;
        break;
      }
    }
  }
  out.rows.assign(order.begin(), order.begin() + keep);
  out.weights.resize(keep);
  for (Index i = 0; i < keep; ++i) out.weights(i) = w[static_cast<std::size_t>(i)];
  return out;
}

EmpiricalSampler::EmpiricalSampler(double sigma, double eta) : sigma_(sigma), eta_(eta) {
  if (!(sigma > 0.0)) throw ConfigError("empirical: sigma must be positive");
  if (!(eta > 0.0) || eta > 1.0) throw ConfigError("empirical: eta must lie in (0, 1]");
}

void EmpiricalSampler::train(const Matrix& x_train, const std::vector<Coalition>& coalitions) {
  require_training(x_train, "empirical");
  x_ = x_train;
  const Matrix sigma = sample_covariance(x_train);
  const int m = static_cast<int>(x_train.cols());
  sss_inv_.clear();
  for (Coalition s : coalitions) {
    if (s.empty() || s == Coalition::full(m)) continue;
    const std::vector<int> obs = s.features();
    try {
      sss_inv_.emplace(s.bits(), spd_inverse(submatrix(sigma, obs, obs)));
    } catch (const NotPositiveDefiniteError& e) {
      throw NumericalFailureError(std::string("empirical: Sigma_SS is singular: ") + e.what());
    }
  }
}

WeightedSamples EmpiricalSampler::draw(Coalition s, const Vector& x_star, Index, Rng&) const {
  const EmpiricalWeights ew = empirical_weights(x_, sss_inv_.at(s.bits()), s, x_star, sigma_, eta_);
  WeightedSamples out;
  out.samples = select_rows_cols(x_, ew.rows, s.complement(static_cast<int>(x_.cols())).features());
  out.weights = ew.weights;
  return out;
}

void GaussianSampler::train(const Matrix& x_train, const std::vector<Coalition>& coalitions) {
  require_training(x_train, "gaussian");
  params_ = gaussian_fit(x_train);
  const int m = static_cast<int>(x_train.cols());
  conditioners_.clear();
  for (Coalition s : coalitions) {
    if (s.empty() || s == Coalition::full(m)) continue;
    conditioners_.emplace(s.bits(), GaussianConditioner(params_, s));
  }
}

WeightedSamples GaussianSampler::draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const {
  return unit_weighted(conditioners_.at(s.bits()).sample(observed_values(x_star, s), k, rng));
}

void CopulaSampler::train(const Matrix& x_train, const std::vector<Coalition>& coalitions) {
  require_training(x_train, "copula");
  model_ = copula_fit(x_train);
  const int m = static_cast<int>(x_train.cols());
  conditioners_.clear();
  for (Coalition s : coalitions) {
    if (s.empty() || s == Coalition::full(m)) continue;
    conditioners_.emplace(s.bits(), GaussianConditioner(model_.gauss, s));
  }
}

WeightedSamples CopulaSampler::draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const {
  const GaussianConditioner& cond = conditioners_.at(s.bits());
  const std::vector<int>& obs = cond.observed();
  const std::vector<int>& unobs = cond.unobserved();
  Vector v_s(static_cast<Index>(obs.size()));
  for (std::size_t a = 0; a < obs.size(); ++a) {
    v_s(static_cast<Index>(a)) = model_.to_normal_scale(obs[a], x_star(obs[a]));
  }
  Matrix v = cond.sample(v_s, k, rng);
  for (Index i = 0; i < v.rows(); ++i) {
    for (std::size_t c = 0; c < unobs.size(); ++c) {
      v(i, static_cast<Index>(c)) = model_.from_normal_scale(unobs[c], v(i, static_cast<Index>(c)));
    }
  }
  return unit_weighted(std::move(v));
}

void BurrSampler::train(const Matrix& x_train, const std::vector<Coalition>&) {
  require_training(x_train, "burr");
  fit_ = burr_mle_fit(x_train, options_);
}

WeightedSamples BurrSampler::draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const {
  const BurrParams cond = burr_conditional(fit_.params, s, observed_values(x_star, s));
  return unit_weighted(burr_sample(cond, k, rng));
}

void GHSampler::train(const Matrix& x_train, const std::vector<Coalition>&) {
  require_training(x_train, "gh");
  fit_ = gh_mle_fit(x_train, options_);
}

WeightedSamples GHSampler::draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const {
  const GHStarParams cond = gh_conditional(fit_.params, s, observed_values(x_star, s));
  return unit_weighted(gh_sample(cond, k, rng));
}

void CtreeSampler::train(const Matrix& x_train, const std::vector<Coalition>& coalitions) {
  require_training(x_train, "ctree");
  x_ = x_train;
  const int m = static_cast<int>(x_train.cols());
  trees_.clear();
  for (Coalition s : coalitions) {
    if (s.empty() || s == Coalition::full(m)) continue;
    trees_.emplace(s.bits(), ctree_fit(x_train, s, options_));
  }
}

WeightedSamples CtreeSampler::draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const {
  const FrequencySample fs = ctree_draw(trees_.at(s.bits()), observed_values(x_star, s), k, rng);
  WeightedSamples out;
  out.samples = select_rows_cols(x_, fs.rows, s.complement(static_cast<int>(x_.cols())).features());
  out.weights = fs.weights;
  return out;
}

Vector estimate_contributions(const BatchPredictor& f, const MonteCarloMethod& method,
                              const Vector& x_star, const std::vector<Coalition>& coalitions,
                              Index k, double phi0, const Rng& stream, SamplingTimes* times,
                              const SampleSink& sink) {
  const int m = static_cast<int>(x_star.size());
  const Coalition grand = Coalition::full(m);
  double t_generate = 0.0;
  double t_predict = 0.0;
  Vector out(static_cast<Index>(coalitions.size()));
  double f_star = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t c = 0; c < coalitions.size(); ++c) {
    const Coalition s = coalitions[c];
    double value;
    if (s.empty()) {
      value = phi0;
    } else if (s == grand) {
      if (std::isnan(f_star)) {
        CpuTimer timer(&t_predict);
        f_star = f(x_star.transpose())(0);
      }
      value = f_star;
    } else {
      WeightedSamples ws;
      Matrix full;
      {
        CpuTimer timer(&t_generate);
        Rng rng = stream.substream({s.bits()});
        ws = method.draw(s, x_star, k, rng);
        if (sink) sink(s, ws);
        full.resize(ws.size(), m);
        for (Index r = 0; r < ws.size(); ++r) {
          for (int j = 0, a = 0; j < m; ++j) full(r, j) = s.contains(j) ? x_star(j) : ws.samples(r, a++);
        }
      }
      CpuTimer timer(&t_predict);
      const Vector pred = f(full);
      value = pred.dot(ws.weights) / ws.weights.sum();
    }
    if (!std::isfinite(value)) {
      std::ostringstream msg;
      msg << method.name() << ": non-finite contribution for coalition {";
      const std::vector<int> feats = s.features();
      for (std::size_t a = 0; a < feats.size(); ++a) msg << (a ? "," : "") << feats[a] + 1;
      msg << "}";
      throw NumericalFailureError(msg.str());
    }
    out(static_cast<Index>(c)) = value;
  }
  if (times != nullptr) {
    times->generate += t_generate;
    times->predict += t_predict;
  }
  return out;
}

void write_samples_csv(std::ostream& out, int m, Coalition s, const Vector& x_star,
                       const WeightedSamples& samples, bool header) {
  if (header) {
    out << "coalition,sample,weight";
    for (int j = 0; j < m; ++j) out << ",x" << j + 1;
    out << '\n';
  }
  const std::vector<int> unobs = s.complement(m).features();
  std::ostringstream line;
  line.precision(10);
  for (Index i = 0; i < samples.size(); ++i) {
    line.str("");
    line << s.bits() << ',' << i << ',' << samples.weights(i);
    std::size_t next = 0;
    for (int j = 0; j < m; ++j) {
      double v = x_star(j);
      if (next < unobs.size() && unobs[next] == j) v = samples.samples(i, static_cast<Index>(next++));
      line << ',' << v;
    }
    out << line.str() << '\n';
  }
}

}  // namespace shapcond
