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

#ifndef SHAPCOND_EMPIRICAL_MARGIN_HPP_
#define SHAPCOND_EMPIRICAL_MARGIN_HPP_

#include <span>
#include <vector>

namespace shapcond {

// Empirical distribution of one feature. The i-th order statistic (1-based)
// sits at probability i / (n + 1); cdf and quantile interpolate linearly
// between those knots, so both stay strictly inside (0, 1) and are mutual
// inverses on the training support. Tied values map to their highest rank.
class EmpiricalMargin {
 public:
  // Throws InsufficientDataError for fewer than 2 values and DomainError for
  // non-finite ones.
  explicit EmpiricalMargin(std::span<const double> values);

  double cdf(double x) const;
  double quantile(double u) const;

  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }
  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_values() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

}  // namespace shapcond

#endif  // SHAPCOND_EMPIRICAL_MARGIN_HPP_
