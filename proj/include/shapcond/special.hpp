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

#ifndef SHAPCOND_SPECIAL_HPP_
#define SHAPCOND_SPECIAL_HPP_

namespace shapcond {

// Modified Bessel function of the third kind K_nu(x), x > 0, evaluated by
// trapezoidal quadrature of  K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
// The integrand is entire and decays double-exponentially, so the trapezoid
// rule converges geometrically in the step size. Throws DomainError for x <= 0.
double bessel_k(double nu, double x);

// log K_nu(x); stays finite where K_nu(x) itself under- or overflows.
double log_bessel_k(double nu, double x);

// Standard normal CDF and its inverse.
double norm_cdf(double x);
double norm_quantile(double p);

}  // namespace shapcond

#endif  // SHAPCOND_SPECIAL_HPP_
