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

#ifndef SHAPCOND_SAMPLERS_HPP_
#define SHAPCOND_SAMPLERS_HPP_

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "shapcond/burr.hpp"
#include "shapcond/coalition.hpp"
#include "shapcond/copula.hpp"
#include "shapcond/ctree.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/gh.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/mle.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

// Draws of x_Sbar given x_S = x*_S. samples is K* x |Sbar| with columns in
// increasing feature order; weights are positive.
struct WeightedSamples {
  Matrix samples;
  Vector weights;

  Index size() const { return samples.rows(); }
};

// Batched model evaluation: one prediction per row of an N x M matrix.
using BatchPredictor = std::function<Vector(const Matrix&)>;

// A Monte Carlo estimator of the contribution function. train() fits
// whatever the method needs and prepares per-coalition state; afterwards the
// object is immutable and draw() may be called from several threads.
class MonteCarloMethod {
 public:
  virtual ~MonteCarloMethod() = default;
  virtual std::string name() const = 0;
  virtual void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) = 0;
  virtual WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const = 0;
};

class IndependenceSampler : public MonteCarloMethod {
 public:
  std::string name() const override { return "independence"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;

 private:
  Matrix x_;
};

// Rows of the training set and their kernel weights, strongest first.
struct EmpiricalWeights {
  std::vector<Index> rows;
  Vector weights;
};

// Scaled Mahalanobis distance D^2 = (x*_S - x_S)' Sigma_SS^{-1} (x*_S - x_S) / |S|
// with weight exp(-D^2 / (2 sigma^2)). Keeps the K* heaviest rows, K* being the
// smallest count whose share of the total weight exceeds eta (all rows when
// eta = 1). If every weight underflows to zero the single nearest row is
// returned with weight 1 and a warning is logged.
EmpiricalWeights empirical_weights(const Matrix& x_train, const Matrix& sigma_ss_inv, Coalition s,
                                   const Vector& x_star, double sigma = 0.1, double eta = 0.95);

class EmpiricalSampler : public MonteCarloMethod {
 public:
  explicit EmpiricalSampler(double sigma = 0.1, double eta = 0.95);
  std::string name() const override { return "empirical"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  // k is ignored; the number of rows follows from eta.
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;

 private:
  double sigma_;
  double eta_;
  Matrix x_;
  std::unordered_map<std::uint32_t, Matrix> sss_inv_;
};

class GaussianSampler : public MonteCarloMethod {
 public:
  std::string name() const override { return "gaussian"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;
  const GaussianParams& params() const { return params_; }

 private:
  GaussianParams params_;
  std::unordered_map<std::uint32_t, GaussianConditioner> conditioners_;
};

class CopulaSampler : public MonteCarloMethod {
 public:
  std::string name() const override { return "copula"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;
  const CopulaModel& model() const { return model_; }

 private:
  CopulaModel model_;
  std::unordered_map<std::uint32_t, GaussianConditioner> conditioners_;
};

class BurrSampler : public MonteCarloMethod {
 public:
  explicit BurrSampler(MleOptions options = {}) : options_(options) {}
  std::string name() const override { return "burr"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;
  const MleResult<BurrParams>& fit() const { return fit_; }

 private:
  MleOptions options_;
  MleResult<BurrParams> fit_;
};

class GHSampler : public MonteCarloMethod {
 public:
  explicit GHSampler(MleOptions options = {}) : options_(options) {}
  std::string name() const override { return "gh"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;
  const MleResult<GHParams>& fit() const { return fit_; }

 private:
  MleOptions options_;
  MleResult<GHParams> fit_;
};

class CtreeSampler : public MonteCarloMethod {
 public:
  explicit CtreeSampler(CtreeOptions options = {}) : options_(options) {}
  std::string name() const override { return "ctree"; }
  void train(const Matrix& x_train, const std::vector<Coalition>& coalitions) override;
  WeightedSamples draw(Coalition s, const Vector& x_star, Index k, Rng& rng) const override;
  const CtreeModel& tree(Coalition s) const { return trees_.at(s.bits()); }

 private:
  CtreeOptions options_;
  Matrix x_;
  std::unordered_map<std::uint32_t, CtreeModel> trees_;
};

// Independence draw: k training rows uniformly with replacement, restricted
// to the Sbar columns, unit weights. Throws InsufficientDataError on an
// empty training set.
WeightedSamples independence_draw(const Matrix& x_train, Coalition s, Index k, Rng& rng);

struct SamplingTimes {
  double generate = 0.0;
  double predict = 0.0;
};

// Receives every sample set produced by estimate_contributions; used to
// dump samples for reuse.
using SampleSink = std::function<void(Coalition, const WeightedSamples&)>;

// One column of the contribution matrix: v(S) = sum_k w_k f(x_Sbar^k, x*_S) /
// sum_k w_k for every coalition in `coalitions` other than the empty and the
// full one, which are pinned to phi0 and f(x*). Each coalition draws from its
// own substream of `stream`, keyed by coalition bits, so results do not
// depend on evaluation order. Throws NumericalFailureError naming the
// coalition if f returns a non-finite value.
Vector estimate_contributions(const BatchPredictor& f, const MonteCarloMethod& method,
                              const Vector& x_star, const std::vector<Coalition>& coalitions,
                              Index k, double phi0, const Rng& stream,
                              SamplingTimes* times = nullptr, const SampleSink& sink = {});

// CSV rows "coalition,sample,weight,x1..xM": full feature vectors with the
// observed entries taken from x_star.
void write_samples_csv(std::ostream& out, int m, Coalition s, const Vector& x_star,
                       const WeightedSamples& samples, bool header);

}  // namespace shapcond

#endif  // SHAPCOND_SAMPLERS_HPP_
