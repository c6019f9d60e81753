// Copyright 2026 The qmorra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Round mechanics: moves, the guess-ordering rule, exact outcome
// distributions and seeded sampling of single rounds.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmorra/errors.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/rng.hpp"

namespace qmorra {

struct Move {
  int player = 0;
  int coins = 0;
  int guess = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

struct RoundRecord {
  GameConfig config;
  std::vector<Move> moves;
  int sampled_total = 0;
  std::optional<int> winner;  // player id, or nullopt for a draw
  std::uint64_t rng_seed = 0;

  bool is_draw() const { return !winner.has_value(); }
};

inline void validate_coins(const GameConfig& config, std::span<const int> coins) {
  config.validate();
  if (coins.size() != static_cast<std::size_t>(config.players)) {
    throw ValidationError("expected " + std::to_string(config.players) + " coin counts, got " +
                              std::to_string(coins.size()),
                          "coins");
  }
  for (std::size_t i = 0; i < coins.size(); ++i) {
    if (coins[i] < 0 || coins[i] > config.coins_per_player) {
      throw ValidationError("player " + std::to_string(i) + " coin count " +
                                std::to_string(coins[i]) + " outside [0, " +
                                std::to_string(config.coins_per_player) + "]",
                            "coins");
    }
  }
}

// Outcome distribution of the shared register after every player applied
// X_theta once per coin. Depends on the coins only through their sum.
inline ProbabilityVector round_distribution(const GameConfig& config, std::span<const int> coins) {
  validate_coins(config, coins);
  int total = 0;
  for (int c : coins) total += c;
  return outcome_distribution(coin_state(config, total));
}

// Moves are in declaration order; each guess must differ from every earlier
// one (the two-player rule "Bob cannot repeat Alice's guess", generalized).
inline void validate_moves(const GameConfig& config, std::span<const Move> moves) {
  config.validate();
  if (moves.size() != static_cast<std::size_t>(config.players)) {
    throw ValidationError("expected one move per player", "moves");
  }
  const int r = config.total_coins();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const Move& mv = moves[i];
    if (mv.coins < 0 || mv.coins > config.coins_per_player) {
      throw ValidationError("player " + std::to_string(mv.player) + " coin count out of range",
                            "coins");
    }
    if (mv.guess < 0 || mv.guess > r) {
      throw ValidationError("player " + std::to_string(mv.player) + " guess out of range",
                            "guess");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (moves[j].guess == mv.guess) {
        throw RuleError("player " + std::to_string(mv.player) + " repeated the guess " +
                            std::to_string(mv.guess) + " of player " +
                            std::to_string(moves[j].player),
                        mv.player);
      }
    }
  }
}

inline std::optional<int> winner_for(std::span<const Move> moves, int total) {
  for (const Move& mv : moves) {
    if (mv.guess == total) return mv.player;
  }
  return std::nullopt;
}

inline RoundRecord play_round(const GameConfig& config, std::span<const Move> moves,
                              std::uint64_t seed) {
  validate_moves(config, moves);
  std::vector<int> coins;
  coins.reserve(moves.size());
  for (const Move& mv : moves) coins.push_back(mv.coins);
  const ProbabilityVector dist = round_distribution(config, coins);

  CounterRng rng(seed);
  RoundRecord record;
  record.config = config;
  record.moves.assign(moves.begin(), moves.end());
  record.sampled_total = sample_index(dist, rng.uniform());
  record.winner = winner_for(moves, record.sampled_total);
  record.rng_seed = seed;
  return record;
}

// P_a(n) = (|x_n(a theta)|^2 + |x_n((a+1) theta)|^2) / 2: Alice's chance of
// outcome n when she plays a coins and Bob plays 0 or 1 at random.
inline double alice_average_prob(double theta, int a, int n) {
  if (a < 0 || a > 1) throw ValidationError("Alice plays 0 or 1 coins", "a");
  if (n < 0 || n > 2) throw ValidationError("outcome must be in [0, 2]", "n");
  return 0.5 * (std::norm(coin_coefficient(3, n, a * theta)) +
                std::norm(coin_coefficient(3, n, (a + 1) * theta)));
}

}  // namespace qmorra
