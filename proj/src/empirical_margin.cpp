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

#include "shapcond/empirical_margin.hpp"

#include <algorithm>
#include <cmath>

#include "shapcond/error.hpp"

namespace shapcond {

EmpiricalMargin::EmpiricalMargin(std::span<const double> values)
    : sorted_(values.begin(), values.end()) {
  if (sorted_.size() < 2) {
    throw InsufficientDataError("empirical margin needs at least 2 values");
  }
  for (double v : sorted_) {
    if (!std::isfinite(v)) throw DomainError("empirical margin: non-finite value");
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalMargin::cdf(double x) const {
  const double n1 = static_cast<double>(sorted_.size() + 1);
  if (x <= sorted_.front()) {
    // Highest rank among values tied with the minimum.
    const auto hi = std::upper_bound(sorted_.begin(), sorted_.end(), sorted_.front());
    return (x < sorted_.front() ? 1.0 : static_cast<double>(hi - sorted_.begin())) / n1;
  }
  if (x >= sorted_.back()) return static_cast<double>(sorted_.size()) / n1;
  // First element > x; the knot below is the last element <= x.
  const auto upper = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  const std::size_t k_hi = static_cast<std::size_t>(upper - sorted_.begin());  // 0-based
  const std::size_t k_lo = k_hi - 1;
  const double x_lo = sorted_[k_lo];
  const double x_hi = sorted_[k_hi];
  const double r_lo = static_cast<double>(k_lo + 1);
  if (x == x_lo) return r_lo / n1;
  const double frac = (x - x_lo) / (x_hi - x_lo);
  return (r_lo + frac) / n1;
}

double EmpiricalMargin::quantile(double u) const {
  const double n = static_cast<double>(sorted_.size());
  double pos = u * (n + 1.0);  // 1-based rank position
  // Snap round-off so that quantile(cdf(x)) returns x exactly at the knots.
  if (std::abs(pos - std::round(pos)) < 1e-9) pos = std::round(pos);
  if (!(pos > 1.0)) return sorted_.front();
  if (pos >= n) return sorted_.back();
  const double fl = std::floor(pos);
  const std::size_t k = static_cast<std::size_t>(fl) - 1;  // 0-based lower knot
  const double frac = pos - fl;
  return sorted_[k] + frac * (sorted_[k + 1] - sorted_[k]);
}

}  // namespace shapcond
