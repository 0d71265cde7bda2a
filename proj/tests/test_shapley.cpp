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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <unordered_map>

#include "shapcond/coalition.hpp"
#include "shapcond/error.hpp"
#include "shapcond/shapley.hpp"

using namespace shapcond;

namespace {

ContributionMatrix from_game(int m, const std::function<double(Coalition)>& v) {
  const auto all = enumerate_coalitions(m);
  ContributionMatrix out(m, 1);
  for (std::size_t c = 0; c < all.size(); ++c) out.values(static_cast<Index>(c), 0) = v(all[c]);
  return out;
}

}  // namespace

TEST(KernelWeight, HandValues) {
  EXPECT_NEAR(kernel_weight(3, 1), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(kernel_weight(2, 1), 0.5, 1e-15);
  EXPECT_EQ(kernel_weight(8, 0), 1e6);
  EXPECT_EQ(kernel_weight(8, 8), 1e6);
  EXPECT_EQ(kernel_weight(8, 0, 123.0), 123.0);
}

TEST(ShapleyWls, ConstantGame) {
  const auto v = from_game(4, [](Coalition) { return 2.5; });
  const Matrix phi = solve_shapley_wls(v, KernelWeightTable(4)).phi;
  EXPECT_NEAR(phi(0, 0), 2.5, 1e-6);
  for (int j = 1; j <= 4; ++j) EXPECT_NEAR(phi(j, 0), 0.0, 1e-6);
}

TEST(ShapleyWls, AdditiveGame) {
  const double a[2] = {1.5, -0.25};
  const auto v = from_game(2, [&](Coalition s) {
    double t = 0.0;
    for (int j : s.features()) t += a[j];
    return t;
  });
  const Matrix phi = solve_shapley_wls(v, KernelWeightTable(2)).phi;
  EXPECT_NEAR(phi(1, 0), 1.5, 1e-4);
  EXPECT_NEAR(phi(2, 0), -0.25, 1e-4);
}

TEST(ShapleyWls, RandomGamesMatchExact) {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> nd;
  for (int m = 2; m <= 5; ++m) {
    for (int rep = 0; rep < 20; ++rep) {
      std::unordered_map<std::uint32_t, double> game;
      for (Coalition s : enumerate_coalitions(m)) game[s.bits()] = nd(gen);
      const auto v = from_game(m, [&](Coalition s) { return game.at(s.bits()); });
      const Matrix phi = solve_shapley_wls(v, KernelWeightTable(m)).phi;
      const std::vector<double> exact = shapley_exact(game, m);
      for (int j = 0; j < m; ++j) EXPECT_NEAR(phi(j + 1, 0), exact[static_cast<std::size_t>(j)], 1e-4);
      double total = 0.0;
      for (int j = 1; j <= m; ++j) total += phi(j, 0);
      EXPECT_NEAR(total, game.at(Coalition::full(m).bits()) - game.at(0), 1e-4);
    }
  }
}

TEST(ShapleyExact, SymmetricAndSquaredGames) {
  std::unordered_map<std::uint32_t, double> card, square;
  for (Coalition s : enumerate_coalitions(3)) {
    card[s.bits()] = s.size();
    square[s.bits()] = s.size() * s.size();
  }
  for (double p : shapley_exact(card, 3)) EXPECT_NEAR(p, 1.0, 1e-12);
  for (double p : shapley_exact(square, 3)) EXPECT_NEAR(p, 3.0, 1e-12);
}

TEST(ShapleyExact, DummyPlayer) {
  std::unordered_map<std::uint32_t, double> game;
  for (Coalition s : enumerate_coalitions(3)) game[s.bits()] = (s.contains(0) ? 2.0 : 0.0) + (s.contains(1) ? 1.0 : 0.0);
  EXPECT_NEAR(shapley_exact(game, 3)[2], 0.0, 1e-12);
}

TEST(ShapleyExact, MissingCoalitionThrows) {
  std::unordered_map<std::uint32_t, double> game = {{0u, 0.0}, {1u, 1.0}};
  EXPECT_THROW(shapley_exact(game, 2), IncompleteGameError);
}

TEST(ShapleySolver, ProjectionShape) {
  const ShapleySolver solver(KernelWeightTable(3));
  EXPECT_EQ(solver.projection().rows(), 4);
  EXPECT_EQ(solver.projection().cols(), 8);
}
