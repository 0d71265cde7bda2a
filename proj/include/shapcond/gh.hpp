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

#ifndef SHAPCOND_GH_HPP_
#define SHAPCOND_GH_HPP_

#include <vector>

#include "shapcond/coalition.hpp"
#include "shapcond/linalg.hpp"
#include "shapcond/rng.hpp"

namespace shapcond {

// Generalized hyperbolic distribution in the (lambda, omega, mu, Sigma, beta)
// form: x = mu + W beta + sqrt(W) U with W ~ GIG(lambda, omega, omega) and
// U ~ N(0, Sigma).
struct GHParams {
  double lambda = 1.0;
  double omega = 1.0;
  Vector mu;
  Matrix sigma;
  Vector beta;

  Index dim() const { return mu.size(); }
};

// The same family with a free GIG(lambda, chi, psi) mixing law. Conditionals
// of a GH distribution are expressed in this form.
struct GHStarParams {
  double lambda = 1.0;
  double chi = 1.0;
  double psi = 1.0;
  Vector mu;
  Matrix sigma;
  Vector beta;

  Index dim() const { return mu.size(); }
};

GHStarParams to_star(const GHParams& p);

double gh_log_density(const GHParams& p, const Vector& x);
double gh_star_log_density(const GHStarParams& p, const Vector& x);

// Distribution of x_Sbar given x_S = x_s:
//   lambda - |S|/2,  chi + (x_s - mu_S)' Sigma_SS^{-1} (x_s - mu_S),
//   psi + beta_S' Sigma_SS^{-1} beta_S,  and the Gaussian-style block updates
//   of mu, Sigma and beta. Throws NumericalFailureError if Sigma_SS is singular.
GHStarParams gh_conditional(const GHStarParams& p, Coalition s, const Vector& x_s);
GHStarParams gh_conditional(const GHParams& p, Coalition s, const Vector& x_s);

// Generalized inverse Gaussian draws with density proportional to
// w^{lambda - 1} exp(-(chi / w + psi w) / 2), by Hoermann-Leydold
// ratio-of-uniforms rejection. Throws DomainError unless chi, psi > 0.
std::vector<double> gig_sample(double lambda, double chi, double psi, Index n, Rng& rng);
double gig_draw(double lambda, double chi, double psi, Rng& rng);
double gig_mean(double lambda, double chi, double psi);

Matrix gh_sample(const GHStarParams& p, Index n, Rng& rng);

}  // namespace shapcond

#endif  // SHAPCOND_GH_HPP_
