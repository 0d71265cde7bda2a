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

#ifndef SHAPCOND_COALITION_HPP_
#define SHAPCOND_COALITION_HPP_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace shapcond {

inline constexpr int kMaxFeatures = 20;

// A subset S of the features {0, ..., M-1}; bit j is set iff feature j is in S
// (observed / conditioned on).
class Coalition {
 public:
  constexpr Coalition() = default;
  constexpr explicit Coalition(std::uint32_t bits) : bits_(bits) {}

  static constexpr Coalition of(std::initializer_list<int> features) {
    std::uint32_t b = 0;
    for (int j : features) b |= (1u << j);
    return Coalition(b);
  }
  static constexpr Coalition full(int m) {
    return Coalition(m >= 32 ? ~0u : ((1u << m) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int j) const { return (bits_ >> j) & 1u; }
  constexpr Coalition complement(int m) const { return Coalition(~bits_ & full(m).bits_); }
  constexpr Coalition with(int j) const { return Coalition(bits_ | (1u << j)); }

  // Member features in increasing order.
  std::vector<int> features() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr bool operator==(Coalition, Coalition) = default;
  friend constexpr auto operator<=>(Coalition, Coalition) = default;

 private:
  std::uint32_t bits_ = 0;
};

// All 2^M coalitions ordered by size, and within a size lexicographically by
// their sorted member lists ({0,1} < {0,2} < {1,2}). The empty set comes first
// and the grand coalition last. Throws InvalidDimensionError unless 1 <= M <= 20.
std::vector<Coalition> enumerate_coalitions(int m);

// The 2^M - 2 coalitions other than the empty set and the grand coalition, in
// enumeration order.
std::vector<Coalition> nontrivial_coalitions(int m);

}  // namespace shapcond

#endif  // SHAPCOND_COALITION_HPP_
