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

#include "shapcond/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "shapcond/error.hpp"

namespace shapcond {
namespace {

// log(cosh(a)) without overflow.
double log_cosh(double a) {
  a = std::abs(a);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double log_integrand(double nu, double x, double t) {
  // cosh t - 1 == 2 sinh^2(t / 2) keeps full precision near t = 0.
  const double cm1 = 2.0 * std::sinh(0.5 * t) * std::sinh(0.5 * t);
  return -x * cm1 + log_cosh(nu * t);
}

}  // namespace

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("bessel_k: argument must be positive and finite");
  }
  nu = std::abs(nu);
  // Peak of the integrand and its width set the step size; the trapezoid
  // error then behaves like exp(-pi^2 / h), below 1e-16 relative at h = 0.25.
  const double peak = std::asinh(nu / x);
  const double curvature = x * std::cosh(peak);
  const double width = 1.0 / std::sqrt(std::max(curvature, 1e-300));
  const double h = std::min(0.25, 0.2 * width);

  const double ref = std::max(log_integrand(nu, x, 0.0), log_integrand(nu, x, peak));
  double sum = 0.5 * std::exp(log_integrand(nu, x, 0.0) - ref);
  constexpr int kMaxNodes = 2'000'000;
  for (int k = 1; k < kMaxNodes; ++k) {
    const double t = k * h;
    const double lg = log_integrand(nu, x, t);
    sum += std::exp(lg - ref);
    if (t > peak && lg < ref - 46.0) break;
  }
  // Undo the exp(-x) factor that was pulled out of the integrand.
  return ref + std::log(h * sum) - x;
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw DomainError("norm_quantile: probability outside [0, 1]");
  }
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

}  // namespace shapcond
