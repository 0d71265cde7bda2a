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

#include "shapcond/mle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shapcond/error.hpp"
#include "shapcond/gaussian.hpp"
#include "shapcond/log.hpp"
#include "shapcond/optimize.hpp"
#include "shapcond/rng.hpp"
#include "shapcond/special.hpp"

namespace shapcond {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename Params>
MleResult<Params> multistart(const std::function<double(const Vector&)>& nll, Vector theta0,
                             const MleOptions& options, int num_params,
                             Params (*unpack)(const Vector&, int), int m, const char* family) {
  NelderMeadOptions nm;
  nm.max_iter = options.max_iter;
  nm.tol = options.tol;
  int evaluations = 0;
  auto counted = [&](const Vector& t) {
    ++evaluations;
    return nll(t);
  };
  Rng rng(options.seed);
  Vector best = theta0;
  double best_value = std::numeric_limits<double>::infinity();
  bool converged = false;
  const int starts = std::max(1, options.starts);
  for (int run = 0; run < starts; ++run) {
    Vector start = best;
    if (run > 0) {
      for (Index i = 0; i < start.size(); ++i) start(i) += options.jitter * rng.normal();
      if (!std::isfinite(counted(start))) start = best;
    }
    const NelderMeadResult r = nelder_mead(counted, start, nm);
    if (r.value < best_value) {
      best_value = r.value;
      best = r.argmin;
    }
    converged = r.converged;
  }
  if (!converged) {
    std::ostringstream msg;
    msg << family << " maximum likelihood did not converge within the iteration cap";
    warn(msg.str());
  }
  MleResult<Params> out;
  out.params = unpack(best, m);
  out.log_likelihood = -best_value;
  out.num_parameters = num_params;
  out.evaluations = evaluations;
  out.converged = converged;
  return out;
}

}  // namespace

int burr_num_parameters(int m) { return 2 * m + 1; }
int gh_num_parameters(int m) { return (m + 1) * (m + 4) / 2; }

Vector burr_pack(const BurrParams& p) {
  const Index m = p.dim();
  Vector t(2 * m + 1);
  t(0) = std::log(p.kappa);
  t.segment(1, m) = p.b.array().log();
  t.segment(1 + m, m) = p.r.array().log();
  return t;
}

BurrParams burr_unpack(const Vector& theta, int m) {
  BurrParams p;
  p.kappa = std::exp(theta(0));
  p.b = theta.segment(1, m).array().exp();
  p.r = theta.segment(1 + m, m).array().exp();
  return p;
}

double burr_log_likelihood(const BurrParams& p, const Matrix& x) {
  const Index n = x.rows();
  const Index m = p.dim();
  if (x.cols() != m) throw ShapeMismatchError("burr_log_likelihood: dimension mismatch");
  double total = 0.0;
  for (Index i = 0; i < n; ++i) total += burr_log_density(p, x.row(i).transpose());
  return total;
}

MleResult<BurrParams> burr_mle_fit(const Matrix& x, const MleOptions& options) {
  const Index n = x.rows();
  const Index m = x.cols();
  if (n < 2 || m < 1) throw InsufficientDataError("burr_mle_fit needs at least two rows");
  if (!(x.array() > 0.0).all()) throw DomainError("Burr data must be strictly positive");
  const Matrix lx = x.array().log().matrix();
  const Vector sum_lx = lx.colwise().sum().transpose();

  // The log-likelihood is written out here so each evaluation reuses log x.
  auto nll = [&](const Vector& t) {
    const double kappa = std::exp(t(0));
    const Vector b = t.segment(1, m).array().exp();
    const Vector logr = t.segment(1 + m, m);
    if (!std::isfinite(kappa) || !b.allFinite()) return std::numeric_limits<double>::infinity();
    double ll = static_cast<double>(n) *
                (std::lgamma(kappa + static_cast<double>(m)) - std::lgamma(kappa) +
                 (b.array().log() + logr.array()).sum());
    ll += (b.array() - 1.0).matrix().dot(sum_lx);
    double tail = 0.0;
    for (Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Index j = 0; j < m; ++j) s += std::exp(logr(j) + b(j) * lx(i, j));
      tail += std::log1p(s);
    }
    ll -= (kappa + static_cast<double>(m)) * tail;
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
  };

  Vector theta0(2 * m + 1);
  theta0(0) = 0.0;
  for (Index j = 0; j < m; ++j) {
    const double mean = lx.col(j).mean();
    const double sd = std::sqrt((lx.col(j).array() - mean).square().sum() / static_cast<double>(n - 1));
    const double b0 = 1.81 / std::max(sd, 1e-6);
    theta0(1 + j) = std::log(b0);
    theta0(1 + m + j) = -b0 * mean;
  }
  return multistart<BurrParams>(nll, theta0, options, burr_num_parameters(static_cast<int>(m)),
                                &burr_unpack, static_cast<int>(m), "Burr");
}

// Layout: lambda, log omega, mu, beta, then the lower Cholesky factor of
// Sigma row by row with log-transformed diagonal.
Vector gh_pack(const GHParams& p) {
  const Index m = p.dim();
  Vector t(gh_num_parameters(static_cast<int>(m)));
  t(0) = p.lambda;
  t(1) = std::log(p.omega);
  t.segment(2, m) = p.mu;
  t.segment(2 + m, m) = p.beta;
  const Matrix l = cholesky(p.sigma);
  Index k = 2 + 2 * m;
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c <= r; ++c) t(k++) = r == c ? std::log(l(r, c)) : l(r, c);
  }
  return t;
}

GHParams gh_unpack(const Vector& theta, int m) {
  GHParams p;
  p.lambda = theta(0);
  p.omega = std::exp(theta(1));
  p.mu = theta.segment(2, m);
  p.beta = theta.segment(2 + m, m);
  Matrix l = Matrix::Zero(m, m);
  Index k = 2 + 2 * m;
  for (Index r = 0; r < m; ++r) {
    for (Index c = 0; c <= r; ++c) l(r, c) = r == c ? std::exp(theta(k++)) : theta(k++);
  }
  p.sigma = l * l.transpose();
  return p;
}

double gh_log_likelihood(const GHParams& p, const Matrix& x) {
  double total = 0.0;
  for (Index i = 0; i < x.rows(); ++i) total += gh_log_density(p, x.row(i).transpose());
  return total;
}

MleResult<GHParams> gh_mle_fit(const Matrix& x, const MleOptions& options) {
  const Index n = x.rows();
  const Index m = x.cols();
  if (n <= m) throw InsufficientDataError("gh_mle_fit needs more rows than columns");
  const double dm = static_cast<double>(m);
  const double log2pi = std::log(2.0 * std::numbers::pi);

  auto nll = [&](const Vector& t) {
    const double lambda = t(0);
    const double omega = std::exp(t(1));
    if (!std::isfinite(lambda) || !std::isfinite(omega) || omega <= 0.0 || std::abs(lambda) > 50.0) {
      return std::numeric_limits<double>::infinity();
    }
    const Vector mu = t.segment(2, m);
    const Vector beta = t.segment(2 + m, m);
    Matrix l = Matrix::Zero(m, m);
    Index k = 2 + 2 * m;
    double log_det = 0.0;
    for (Index r = 0; r < m; ++r) {
      for (Index c = 0; c <= r; ++c) {
        if (r == c) {
          log_det += 2.0 * t(k);
          l(r, c) = std::exp(t(k++));
        } else {
          l(r, c) = t(k++);
        }
      }
    }
    if (!l.allFinite() || !std::isfinite(log_det)) return std::numeric_limits<double>::infinity();
    const auto tri = l.triangularView<Eigen::Lower>();
    const Vector zb = tri.solve(beta);
    const double b = omega + zb.squaredNorm();
    const Matrix centred = (x.rowwise() - mu.transpose()).transpose();
    const Eigen::MatrixXd zd = tri.solve(centred);
    const double nu = lambda - 0.5 * dm;
    double ll = static_cast<double>(n) *
                (-0.5 * dm * log2pi - 0.5 * log_det - log_bessel_k(lambda, omega));
    for (Index i = 0; i < n; ++i) {
      const double a = omega + zd.col(i).squaredNorm();
      ll += 0.5 * nu * std::log(a / b) + log_bessel_k(nu, std::sqrt(a * b)) + zd.col(i).dot(zb);
    }
    return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
  };

  const GaussianParams g = gaussian_fit(x);
  GHParams start;
  start.lambda = 1.0;
  start.omega = 1.0;
  start.mu = g.mu;
  start.beta = Vector::Zero(m);
  start.sigma = g.sigma / gig_mean(1.0, 1.0, 1.0);
  return multistart<GHParams>(nll, gh_pack(start), options, gh_num_parameters(static_cast<int>(m)),
                              &gh_unpack, static_cast<int>(m), "GH");
}

}  // namespace shapcond
