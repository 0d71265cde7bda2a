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

#include "shapcond/gh.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "shapcond/error.hpp"
#include "shapcond/special.hpp"

namespace shapcond {
namespace {

void check_gig(double lambda, double chi, double psi) {
  if (!(chi > 0.0) || !(psi > 0.0) || !std::isfinite(chi) || !std::isfinite(psi) ||
      !std::isfinite(lambda)) {
    throw DomainError("GIG parameters require chi > 0 and psi > 0");
  }
}

double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// The three samplers below draw from the standardised density
// x^{lambda-1} exp(-omega/2 (x + 1/x)) with lambda >= 0.

double rou_shift(double lambda, double omega, Rng& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = (2.0 * a * a * a) / 27.0 - (a * b) / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 = fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;
  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);
  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x > 0.0 && std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

double rou_noshift(double lambda, double omega, Rng& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  const double ym =
      ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) / omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Piecewise hat for 0 <= lambda < 1 and small omega, where the density is
// not log-concave near the origin.
double constant_hat(double lambda, double omega, Rng& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  double area[3];
  double k1, k2;
  area[0] = k0 * x0;
  if (x0 >= 2.0 / omega) {
    k1 = 0.0;
    area[1] = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area[1] = lambda == 0.0
                  ? k1 * std::log(2.0 / (omega * omega))
                  : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(2.0 / omega, lambda - 1.0);
    area[2] = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area[0] + area[1] + area[2];
  for (;;) {
    double v = total * rng.uniform();
    double x, hx;
    if (v <= area[0]) {
      x = x0 * v / area[0];
      hx = k0;
    } else if ((v -= area[0]) <= area[1]) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area[1];
      const double a = std::max(x0, 2.0 / omega);
      x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * a) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    const double u = rng.uniform() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) return x;
  }
}

double standard_gig(double lambda, double omega, Rng& rng) {
  if (lambda > 2.0 || omega > 3.0) return rou_shift(lambda, omega, rng);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) return rou_noshift(lambda, omega, rng);
  return constant_hat(lambda, omega, rng);
}

struct BlockAlgebra {
  std::vector<int> observed;
  std::vector<int> unobserved;
  Matrix gain;      // Sigma_SbarS Sigma_SS^{-1}
  Matrix sss_inv;
};

BlockAlgebra block_algebra(const Matrix& sigma, Coalition s) {
  BlockAlgebra out;
  out.observed = s.features();
  out.unobserved = s.complement(static_cast<int>(sigma.rows())).features();
  if (out.observed.empty()) {
    out.gain = Matrix::Zero(static_cast<Index>(out.unobserved.size()), 0);
    out.sss_inv = Matrix::Zero(0, 0);
    return out;
  }
  try {
    out.sss_inv = spd_inverse(submatrix(sigma, out.observed, out.observed));
  } catch (const NotPositiveDefiniteError& e) {
    throw NumericalFailureError(std::string("Sigma_SS is singular: ") + e.what());
  }
  out.gain = submatrix(sigma, out.unobserved, out.observed) * out.sss_inv;
  return out;
}

}  // namespace

GHStarParams to_star(const GHParams& p) {
  return GHStarParams{p.lambda, p.omega, p.omega, p.mu, p.sigma, p.beta};
}

double gh_star_log_density(const GHStarParams& p, const Vector& x) {
  const Index m = p.dim();
  if (x.size() != m) throw ShapeMismatchError("gh_log_density: dimension mismatch");
  Matrix l;
  try {
    l = cholesky(p.sigma);
  } catch (const NotPositiveDefiniteError&) {
    return -std::numeric_limits<double>::infinity();
  }
  const auto tri = l.triangularView<Eigen::Lower>();
  const Vector diff = x - p.mu;
  const Vector zd = tri.solve(diff);
  const Vector zb = tri.solve(p.beta);
  const double delta = zd.squaredNorm();
  const double q = zb.squaredNorm();
  const double skew = zd.dot(zb);
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  const double nu = p.lambda - 0.5 * static_cast<double>(m);
  const double a = p.chi + delta;
  const double b = p.psi + q;
  return 0.5 * nu * std::log(a / b) + 0.5 * p.lambda * std::log(p.psi / p.chi) +
         log_bessel_k(nu, std::sqrt(a * b)) - 0.5 * static_cast<double>(m) *
         std::log(2.0 * std::numbers::pi) - 0.5 * log_det -
         log_bessel_k(p.lambda, std::sqrt(p.chi * p.psi)) + skew;
}

double gh_log_density(const GHParams& p, const Vector& x) {
  return gh_star_log_density(to_star(p), x);
}

GHStarParams gh_conditional(const GHStarParams& p, Coalition s, const Vector& x_s) {
  const BlockAlgebra alg = block_algebra(p.sigma, s);
  if (x_s.size() != static_cast<Index>(alg.observed.size())) {
    throw ShapeMismatchError("gh_conditional: conditioning vector has the wrong length");
  }
  GHStarParams out;
  const Vector mu_sbar = subvector(p.mu, alg.unobserved);
  const Vector beta_sbar = subvector(p.beta, alg.unobserved);
  const Matrix sbb = submatrix(p.sigma, alg.unobserved, alg.unobserved);
  out.lambda = p.lambda - 0.5 * static_cast<double>(alg.observed.size());
  if (alg.observed.empty()) {
    out.chi = p.chi;
    out.psi = p.psi;
    out.mu = mu_sbar;
    out.sigma = sbb;
    out.beta = beta_sbar;
    return out;
  }
  const Vector diff = x_s - subvector(p.mu, alg.observed);
  const Vector beta_s = subvector(p.beta, alg.observed);
  out.chi = p.chi + diff.dot(alg.sss_inv * diff);
  out.psi = p.psi + beta_s.dot(alg.sss_inv * beta_s);
  out.mu = mu_sbar + alg.gain * diff;
  const Matrix sbs = submatrix(p.sigma, alg.unobserved, alg.observed);
  out.sigma = sbb - alg.gain * sbs.transpose();
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
  out.beta = beta_sbar - alg.gain * beta_s;
  return out;
}

GHStarParams gh_conditional(const GHParams& p, Coalition s, const Vector& x_s) {
  return gh_conditional(to_star(p), s, x_s);
}

double gig_draw(double lambda, double chi, double psi, Rng& rng) {
  check_gig(lambda, chi, psi);
  const double scale = std::sqrt(chi / psi);
  const double omega = std::sqrt(chi * psi);
  // If X ~ GIG(lambda, omega, omega) then 1/X ~ GIG(-lambda, omega, omega).
  const double x = standard_gig(std::abs(lambda), omega, rng);
  return lambda < 0.0 ? scale / x : scale * x;
}

std::vector<double> gig_sample(double lambda, double chi, double psi, Index n, Rng& rng) {
  check_gig(lambda, chi, psi);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (auto& w : out) w = gig_draw(lambda, chi, psi, rng);
  return out;
}

double gig_mean(double lambda, double chi, double psi) {
  check_gig(lambda, chi, psi);
  const double omega = std::sqrt(chi * psi);
  return std::sqrt(chi / psi) *
         std::exp(log_bessel_k(lambda + 1.0, omega) - log_bessel_k(lambda, omega));
}

Matrix gh_sample(const GHStarParams& p, Index n, Rng& rng) {
  const Index d = p.dim();
  Matrix out(n, d);
  if (d == 0) return out;
  Matrix l;
  try {
    l = cholesky(p.sigma);
  } catch (const NotPositiveDefiniteError&) {
    Matrix jittered = p.sigma;
    jittered.diagonal().array() += 1e-10 * std::max(1.0, p.sigma.diagonal().maxCoeff());
    l = cholesky(jittered);
  }
  Vector z(d);
  for (Index i = 0; i < n; ++i) {
    const double w = gig_draw(p.lambda, p.chi, p.psi, rng);
    const double sw = std::sqrt(w);
    for (Index j = 0; j < d; ++j) z(j) = rng.normal();
    for (Index r = 0; r < d; ++r) {
      double acc = 0.0;
      for (Index c = 0; c <= r; ++c) acc += l(r, c) * z(c);
      out(i, r) = p.mu(r) + w * p.beta(r) + sw * acc;
    }
  }
  return out;
}

}  // namespace shapcond
