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

#ifndef SHAPCOND_RNG_HPP_
#define SHAPCOND_RNG_HPP_

#include <array>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

#include "shapcond/linalg.hpp"

namespace shapcond {

// xoshiro256** seeded through splitmix64. The generator is fully specified
// here (including the normal and gamma transforms) so that a seed produces the
// same stream on every platform, which std:: distributions do not promise.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal();
  double exponential();
  // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the boost U^(1/shape).
  double gamma(double shape);

  std::uint64_t seed() const { return seed_; }

  // A child stream keyed by the given tuple. It depends only on the parent's
  // seed, never on how many draws the parent has made.
  Rng substream(std::initializer_list<std::uint64_t> keys) const;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// FNV-1a, used to turn method names into substream keys.
std::uint64_t hash_key(std::string_view text);

Matrix sample_std_normal(Rng& rng, Index n, Index d);

}  // namespace shapcond

#endif  // SHAPCOND_RNG_HPP_
