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

// Two-player strategies: exact win/draw probabilities, grid best responses and
// an exhaustive search for Nash equilibria of the deformed game.
//
// Alice commits to a mix over her coin counts and one guess. Bob commits to a
// mix and a guess per coin count. Guesses of both players must differ; when a
// player's candidate guesses are enumerated, the guesses the opponent actually
// plays (coin counts with positive probability) are excluded.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmorra/errors.hpp"
#include "qmorra/parallel.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/tolerances.hpp"

namespace qmorra {

struct AliceStrategy {
  std::vector<double> mix;  // probability of playing 0..m coins
  int guess = 0;
};

struct BobStrategy {
  std::vector<double> mix;
  std::vector<int> guesses;  // guess for each coin count 0..m
};

enum class Purity { kPure, kMixed };

inline const char* to_string(Purity p) { return p == Purity::kPure ? "pure" : "mixed"; }

inline bool is_degenerate(std::span<const double> mix) {
  return std::any_of(mix.begin(), mix.end(), [](double v) { return v == 1.0; });
}

// p_{a,b}(n) for the two-player game with m coins each.
class PayoffTable {
 public:
  explicit PayoffTable(double theta, int coins_per_player = 1)
      : theta_(theta), coins_(coins_per_player) {
    GameConfig config{2, coins_per_player, theta};
    config.validate();
    outcomes_ = config.dim();
    const int counts = coins_ + 1;
    table_.resize(static_cast<std::size_t>(counts * counts * outcomes_));
    for (int a = 0; a < counts; ++a) {
      for (int b = 0; b < counts; ++b) {
        const ProbabilityVector dist = outcome_distribution(coin_state(config, a + b));
        for (int n = 0; n < outcomes_; ++n) table_[index(a, b, n)] = dist[n];
      }
    }
  }

  double theta() const { return theta_; }
  int coins() const { return coins_; }
  int counts() const { return coins_ + 1; }
  int outcomes() const { return outcomes_; }

  double operator()(int a, int b, int n) const { return table_[index(a, b, n)]; }

 private:
  std::size_t index(int a, int b, int n) const {
    return static_cast<std::size_t>((a * (coins_ + 1) + b) * outcomes_ + n);
  }

  double theta_;
  int coins_;
  int outcomes_ = 0;
  std::vector<double> table_;
};

namespace detail {

inline void validate_mix(std::span<const double> mix, int counts, const char* field) {
  if (mix.size() != static_cast<std::size_t>(counts)) {
    throw ValidationError(std::string(field) + " must have " + std::to_string(counts) +
                              " entries",
                          field);
  }
  double sum = 0.0;
  for (double v : mix) {
    if (!(v >= 0.0) || v > 1.0) {
      throw ValidationError(std::string(field) + " entries must lie in [0, 1]", field);
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kTolerances.mix_sum) {
    throw ValidationError(std::string(field) + " must sum to 1", field);
  }
}

inline void validate_alice(const PayoffTable& t, const AliceStrategy& alice) {
  validate_mix(alice.mix, t.counts(), "alice.mix");
  if (alice.guess < 0 || alice.guess >= t.outcomes()) {
    throw ValidationError("alice.guess out of range", "alice.guess");
  }
}

inline void validate_bob(const PayoffTable& t, const BobStrategy& bob) {
  validate_mix(bob.mix, t.counts(), "bob.mix");
  if (bob.guesses.size() != static_cast<std::size_t>(t.counts())) {
    throw ValidationError("bob.guesses needs one guess per coin count", "bob.guesses");
  }
  for (int n : bob.guesses) {
    if (n < 0 || n >= t.outcomes()) {
      throw ValidationError("bob.guesses entry out of range", "bob.guesses");
    }
  }
}

inline void validate_pair(const PayoffTable& t, const AliceStrategy& alice, const BobStrategy& bob) {
  validate_alice(t, alice);
  validate_bob(t, bob);
  for (int b = 0; b < t.counts(); ++b) {
    if (bob.mix[b] > 0.0 && bob.guesses[b] == alice.guess) {
      throw ValidationError("Bob repeats Alice's guess " + std::to_string(alice.guess) +
                                " when playing " + std::to_string(b) + " coins",
                            "bob.guesses");
    }
  }
}

inline double alice_value(const PayoffTable& t, std::span<const double> pa,
                          std::span<const double> pb, int guess) {
  double v = 0.0;
  for (int a = 0; a < t.counts(); ++a) {
    for (int b = 0; b < t.counts(); ++b) v += pa[a] * pb[b] * t(a, b, guess);
  }
  return v;
}

inline double bob_value(const PayoffTable& t, std::span<const double> pa,
                        std::span<const double> pb, std::span<const int> guesses) {
  double v = 0.0;
  for (int a = 0; a < t.counts(); ++a) {
    for (int b = 0; b < t.counts(); ++b) v += pa[a] * pb[b] * t(a, b, guesses[b]);
  }
  return v;
}

// Bob's payoff table against a fixed Alice mix: vb[b * outcomes + n].
inline std::vector<double> bob_table(const PayoffTable& t, std::span<const double> pa) {
  std::vector<double> vb(static_cast<std::size_t>(t.counts() * t.outcomes()), 0.0);
  for (int b = 0; b < t.counts(); ++b) {
    for (int n = 0; n < t.outcomes(); ++n) {
      double v = 0.0;
      for (int a = 0; a < t.counts(); ++a) v += pa[a] * t(a, b, n);
      vb[b * t.outcomes() + n] = v;
    }
  }
  return vb;
}

// Alice's payoff table against a fixed Bob mix: va[a * outcomes + n].
inline std::vector<double> alice_table(const PayoffTable& t, std::span<const double> pb) {
  std::vector<double> va(static_cast<std::size_t>(t.counts() * t.outcomes()), 0.0);
  for (int a = 0; a < t.counts(); ++a) {
    for (int n = 0; n < t.outcomes(); ++n) {
      double v = 0.0;
      for (int b = 0; b < t.counts(); ++b) v += pb[b] * t(a, b, n);
      va[a * t.outcomes() + n] = v;
    }
  }
  return va;
}

// Guesses Bob plays with probability above `threshold`; Alice may not use them.
inline std::vector<bool> blocked_guesses(int outcomes, std::span<const double> pb,
                                         std::span<const int> guesses, double threshold = 0.0) {
  std::vector<bool> blocked(static_cast<std::size_t>(outcomes), false);
  for (std::size_t b = 0; b < pb.size(); ++b) {
    if (pb[b] > threshold) blocked[guesses[b]] = true;
  }
  return blocked;
}

inline void compositions(int parts, int remaining, std::vector<int>& prefix,
                         std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    prefix.push_back(k);
    compositions(parts - 1, remaining - k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

// Number of grid cells per unit probability; step must divide 1.
inline int grid_divisions(double step) {
  if (!(step > 0.0) || step > 1.0) {
    throw ValidationError("grid_step must lie in (0, 1]", "grid_step");
  }
  const double inv = 1.0 / step;
  const long long n = std::llround(inv);
  if (n < 1 || std::abs(static_cast<double>(n) * step - 1.0) > kTolerances.grid) {
    throw ValidationError("grid_step must divide 1", "grid_step");
  }
  return static_cast<int>(n);
}

// All mixes over `counts` coin counts with entries k/N, in ascending
// lexicographic order of the mix vector.
inline std::vector<std::vector<double>> grid_mixes(int counts, double step) {
  const int n = grid_divisions(step);
  std::vector<std::vector<int>> parts;
  std::vector<int> prefix;
  detail::compositions(counts, n, prefix, parts);
  std::vector<std::vector<double>> mixes;
  mixes.reserve(parts.size());
  for (const auto& p : parts) {
    std::vector<double> mix(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) mix[i] = static_cast<double>(p[i]) / n;
    mixes.push_back(std::move(mix));
  }
  return mixes;
}

inline std::vector<double> uniform_mix(int counts) {
  return std::vector<double>(static_cast<std::size_t>(counts), 1.0 / counts);
}

inline std::vector<double> pure_mix(int counts, int coins) {
  std::vector<double> mix(static_cast<std::size_t>(counts), 0.0);
  mix.at(static_cast<std::size_t>(coins)) = 1.0;
  return mix;
}

// sum_{a,b} P^A_a P^B_b p_{a,b}(alice.guess)
inline double alice_win_prob(const PayoffTable& t, const AliceStrategy& alice, const BobStrategy& bob) {
  detail::validate_pair(t, alice, bob);
  return detail::alice_value(t, alice.mix, bob.mix, alice.guess);
}

// sum_{a,b} P^A_a P^B_b p_{a,b}(bob.guesses[b])
inline double bob_win_prob(const PayoffTable& t, const AliceStrategy& alice, const BobStrategy& bob) {
  detail::validate_pair(t, alice, bob);
  return detail::bob_value(t, alice.mix, bob.mix, bob.guesses);
}

inline double draw_prob(const PayoffTable& t, const AliceStrategy& alice, const BobStrategy& bob) {
  return std::max(0.0, 1.0 - alice_win_prob(t, alice, bob) - bob_win_prob(t, alice, bob));
}

inline double alice_win_prob(double theta, const AliceStrategy& alice, const BobStrategy& bob) {
  const int m = static_cast<int>(alice.mix.size()) - 1;
  return alice_win_prob(PayoffTable(theta, std::max(m, 1)), alice, bob);
}

inline double bob_win_prob(double theta, const AliceStrategy& alice, const BobStrategy& bob) {
  const int m = static_cast<int>(alice.mix.size()) - 1;
  return bob_win_prob(PayoffTable(theta, std::max(m, 1)), alice, bob);
}

inline double draw_prob(double theta, const AliceStrategy& alice, const BobStrategy& bob) {
  const int m = static_cast<int>(alice.mix.size()) - 1;
  return draw_prob(PayoffTable(theta, std::max(m, 1)), alice, bob);
}

// Bob's best legal guess for each coin count against an Alice mix and guess;
// smallest guess on ties.
inline std::vector<int> best_bob_guesses(const PayoffTable& t, std::span<const double> alice_mix,
                                         int alice_guess) {
  const std::vector<double> vb = detail::bob_table(t, alice_mix);
  std::vector<int> guesses(static_cast<std::size_t>(t.counts()), -1);
  for (int b = 0; b < t.counts(); ++b) {
    double best = -1.0;
    for (int n = 0; n < t.outcomes(); ++n) {
      if (n == alice_guess) continue;
      const double v = vb[b * t.outcomes() + n];
      if (v > best + kTolerances.tie) {
        best = v;
        guesses[b] = n;
      }
    }
  }
  return guesses;
}

// Maximizes Bob's win probability over grid mixes and legal guess maps. Ties go
// to the smallest mix vector, then the smallest guess map.
inline BobStrategy best_response_bob(const PayoffTable& t, const AliceStrategy& alice,
                                     double grid_step) {
  detail::validate_alice(t, alice);
  const std::vector<double> vb = detail::bob_table(t, alice.mix);
  const std::vector<int> best_guess = best_bob_guesses(t, alice.mix, alice.guess);
  int smallest_legal = alice.guess == 0 ? 1 : 0;

  std::vector<double> per_count(static_cast<std::size_t>(t.counts()));
  for (int b = 0; b < t.counts(); ++b) per_count[b] = vb[b * t.outcomes() + best_guess[b]];
  const double top = *std::max_element(per_count.begin(), per_count.end());

  for (auto& mix : grid_mixes(t.counts(), grid_step)) {
    double v = 0.0;
    for (int b = 0; b < t.counts(); ++b) v += mix[b] * per_count[b];
    if (v >= top - kTolerances.tie) {
      BobStrategy bob{mix, std::vector<int>(static_cast<std::size_t>(t.counts()))};
      for (int b = 0; b < t.counts(); ++b) {
        bob.guesses[b] = mix[b] > 0.0 ? best_guess[b] : smallest_legal;
      }
      return bob;
    }
  }
  throw std::logic_error("grid contains no pure mix");
}

// Maximizes Alice's win probability over grid mixes and the guesses Bob does
// not play. Same tie-breaking as best_response_bob.
inline AliceStrategy best_response_alice(const PayoffTable& t, const BobStrategy& bob,
                                         double grid_step) {
  detail::validate_bob(t, bob);
  const std::vector<double> va = detail::alice_table(t, bob.mix);
  const std::vector<bool> blocked = detail::blocked_guesses(t.outcomes(), bob.mix, bob.guesses);

  double top = -1.0;
  for (int a = 0; a < t.counts(); ++a) {
    for (int n = 0; n < t.outcomes(); ++n) {
      if (!blocked[n]) top = std::max(top, va[a * t.outcomes() + n]);
    }
  }
  if (top < 0.0) throw ValidationError("Bob's guesses leave Alice no legal guess", "bob.guesses");

  for (auto& mix : grid_mixes(t.counts(), grid_step)) {
    for (int n = 0; n < t.outcomes(); ++n) {
      if (blocked[n]) continue;
      double v = 0.0;
      for (int a = 0; a < t.counts(); ++a) v += mix[a] * va[a * t.outcomes() + n];
      if (v >= top - kTolerances.tie) return AliceStrategy{mix, n};
    }
  }
  throw std::logic_error("grid contains no pure mix");
}

inline BobStrategy best_response_bob(double theta, const AliceStrategy& alice, double grid_step) {
  const int m = std::max(static_cast<int>(alice.mix.size()) - 1, 1);
  return best_response_bob(PayoffTable(theta, m), alice, grid_step);
}

inline AliceStrategy best_response_alice(double theta, const BobStrategy& bob, double grid_step) {
  const int m = std::max(static_cast<int>(bob.mix.size()) - 1, 1);
  return best_response_alice(PayoffTable(theta, m), bob, grid_step);
}

struct UnilateralGain {
  double alice = 0.0;
  double bob = 0.0;
  double max() const { return std::max(alice, bob); }
};

// How much each player could gain by deviating to any pure strategy (the grid
// optimum of a linear payoff is attained at a pure point). Bob guesses with
// probability at most `blocking_threshold` do not restrict Alice.
inline UnilateralGain unilateral_gain(const PayoffTable& t, const AliceStrategy& alice,
                                      const BobStrategy& bob, double blocking_threshold = 0.0) {
  const std::vector<double> vb = detail::bob_table(t, alice.mix);
  const std::vector<double> va = detail::alice_table(t, bob.mix);
  double bob_top = 0.0;
  for (int b = 0; b < t.counts(); ++b) {
    for (int n = 0; n < t.outcomes(); ++n) {
      if (n != alice.guess) bob_top = std::max(bob_top, vb[b * t.outcomes() + n]);
    }
  }
  const std::vector<bool> blocked =
      detail::blocked_guesses(t.outcomes(), bob.mix, bob.guesses, blocking_threshold);
  double alice_top = 0.0;
  for (int a = 0; a < t.counts(); ++a) {
    for (int n = 0; n < t.outcomes(); ++n) {
      if (!blocked[n] || n == alice.guess) alice_top = std::max(alice_top, va[a * t.outcomes() + n]);
    }
  }
  UnilateralGain g;
  g.alice = alice_top - detail::alice_value(t, alice.mix, bob.mix, alice.guess);
  g.bob = bob_top - detail::bob_value(t, alice.mix, bob.mix, bob.guesses);
  return g;
}

struct EquilibriumResult {
  double theta = 0.0;
  AliceStrategy alice;
  BobStrategy bob;
  double p_alice = 0.0;
  double p_bob = 0.0;
  double p_draw = 0.0;
  Purity purity = Purity::kPure;
  double grid_step = 0.01;
  // False when no pair on the grid is a fixed point; the pair is then the
  // best epsilon-equilibrium and max_gain is its epsilon.
  bool exact = true;
  double max_gain = 0.0;
  std::size_t fixed_points = 0;  // distinct exact fixed points on the grid
};

namespace detail {

// Calls fn(guesses) for every guess map that avoids `alice_guess`. Coin
// counts Bob never plays get the smallest legal guess only, so each strategy
// is visited once.
template <typename Fn>
void for_each_guess_map(int counts, int outcomes, int alice_guess, std::span<const double> mix,
                        Fn&& fn) {
  std::vector<int> legal;
  for (int n = 0; n < outcomes; ++n) {
    if (n != alice_guess) legal.push_back(n);
  }
  std::vector<std::size_t> idx(static_cast<std::size_t>(counts), 0);
  std::vector<int> guesses(static_cast<std::size_t>(counts), legal.front());
  while (true) {
    for (int b = 0; b < counts; ++b) guesses[b] = legal[idx[b]];
    fn(std::span<const int>(guesses));
    // odometer, most significant = coin count 0
    int pos = counts - 1;
    while (pos >= 0) {
      const std::size_t limit = mix[pos] > 0.0 ? legal.size() : 1;
      if (++idx[pos] < limit) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

inline EquilibriumResult make_result(const PayoffTable& t, double grid_step, AliceStrategy alice,
                                     BobStrategy bob) {
  EquilibriumResult r;
  r.theta = t.theta();
  r.grid_step = grid_step;
  r.p_alice = detail::alice_value(t, alice.mix, bob.mix, alice.guess);
  r.p_bob = detail::bob_value(t, alice.mix, bob.mix, bob.guesses);
  r.p_draw = std::max(0.0, 1.0 - r.p_alice - r.p_bob);
  r.purity = is_degenerate(alice.mix) && is_degenerate(bob.mix) ? Purity::kPure : Purity::kMixed;
  r.alice = std::move(alice);
  r.bob = std::move(bob);
  return r;
}

}  // namespace detail

// Exhaustive grid search. For every Alice strategy (guess ascending, then mix
// ascending) each Bob strategy in Bob's best-response set is checked against
// Alice's best response; the first mutual best response is returned.
//
// When the grid holds no exact fixed point (mixed equilibria generally sit
// between grid points) the pair with the smallest unilateral gain is returned
// with exact = false. For that ranking a Bob coin count played with
// probability at most one grid step does not block Alice's guess: such a pair
// is only an equilibrium because of a vanishing mix weight and disappears
// under refinement.
inline EquilibriumResult find_equilibrium(const PayoffTable& t, double grid_step) {
  if (!(grid_step > 0.0) || grid_step > 0.5) {
    throw ValidationError("grid_step must lie in (0, 0.5]", "grid_step");
  }
  const auto mixes = grid_mixes(t.counts(), grid_step);
  const int counts = t.counts();
  const int outcomes = t.outcomes();
  const double tol = kTolerances.nash;
  const double robust_threshold = grid_step + 1e-12;

  std::vector<std::vector<double>> alice_tables;
  alice_tables.reserve(mixes.size());
  for (const auto& mix : mixes) alice_tables.push_back(detail::alice_table(t, mix));

  std::optional<EquilibriumResult> first;
  std::size_t count = 0;

  double best_gain = std::numeric_limits<double>::infinity();
  AliceStrategy best_alice;
  BobStrategy best_bob;

  for (int g = 0; g < outcomes; ++g) {
    for (const auto& amix : mixes) {
      const std::vector<double> vb = detail::bob_table(t, amix);
      double bob_top = 0.0;
      for (int i = 0; i < counts * outcomes; ++i) {
        if (i % outcomes != g) bob_top = std::max(bob_top, vb[i]);
      }
      for (std::size_t k = 0; k < mixes.size(); ++k) {
        const auto& bmix = mixes[k];
        const auto& va = alice_tables[k];
        double alice_v = 0.0;
        for (int a = 0; a < counts; ++a) alice_v += amix[a] * va[a * outcomes + g];

        detail::for_each_guess_map(counts, outcomes, g, bmix, [&](std::span<const int> guesses) {
          double bob_v = 0.0;
          for (int b = 0; b < counts; ++b) bob_v += bmix[b] * vb[b * outcomes + guesses[b]];
          const double bob_gain = bob_top - bob_v;

          auto alice_gain_with = [&](double threshold) {
            const auto blocked = detail::blocked_guesses(outcomes, bmix, guesses, threshold);
            double top = 0.0;
            for (int a = 0; a < counts; ++a) {
              for (int n = 0; n < outcomes; ++n) {
                if (!blocked[n] || n == g) top = std::max(top, va[a * outcomes + n]);
              }
            }
            return top - alice_v;
          };

          if (bob_gain <= tol) {
            if (alice_gain_with(0.0) <= tol) {
              ++count;
              if (!first) {
                first = detail::make_result(
                    t, grid_step, AliceStrategy{amix, g},
                    BobStrategy{bmix, std::vector<int>(guesses.begin(), guesses.end())});
              }
            }
          }
          if (!first) {
            const double gain = std::max(bob_gain, alice_gain_with(robust_threshold));
            if (gain < best_gain - kTolerances.tie) {
              best_gain = gain;
              best_alice = AliceStrategy{amix, g};
              best_bob = BobStrategy{bmix, std::vector<int>(guesses.begin(), guesses.end())};
            }
          }
        });
      }
    }
  }

  if (first) {
    first->exact = true;
    first->fixed_points = count;
    first->max_gain = unilateral_gain(t, first->alice, first->bob).max();
    return *first;
  }
  EquilibriumResult r = detail::make_result(t, grid_step, best_alice, best_bob);
  r.exact = false;
  r.fixed_points = 0;
  r.max_gain = unilateral_gain(t, r.alice, r.bob).max();
  return r;
}

inline EquilibriumResult find_equilibrium(double theta, double grid_step = 0.01) {
  return find_equilibrium(PayoffTable(theta, 1), grid_step);
}

struct PurityPoint {
  EquilibriumResult equilibrium;
  double theta() const { return equilibrium.theta; }
  Purity purity() const { return equilibrium.purity; }
};

struct PurityScan {
  std::vector<PurityPoint> points;
  std::vector<double> boundaries;  // midpoints between neighbours of differing class
};

// Classifies each theta of an ascending grid; points are independent and are
// solved in parallel.
inline PurityScan purity_region_scan(std::span<const double> theta_grid, double grid_step) {
  PurityScan scan;
  scan.points = parallel_map(theta_grid.size(), [&](std::size_t i) {
    return PurityPoint{find_equilibrium(theta_grid[i], grid_step)};
  });
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    if (scan.points[i].purity() != scan.points[i - 1].purity()) {
      scan.boundaries.push_back(0.5 * (theta_grid[i] + theta_grid[i - 1]));
    }
  }
  return scan;
}

// Preset strategy pairs for comparing play styles at a given theta.
struct StrategyPair {
  AliceStrategy alice;
  BobStrategy bob;
};

// Both players pick their coins uniformly at random. Alice takes the guess
// most likely to win under that play; Bob takes his best legal guess for each
// coin count.
inline StrategyPair random_play(const PayoffTable& t) {
  const auto uniform = uniform_mix(t.counts());
  int guess = 0;
  double best = -1.0;
  for (int n = 0; n < t.outcomes(); ++n) {
    const double v = detail::alice_value(t, uniform, uniform, n);
    if (v > best + kTolerances.tie) {
      best = v;
      guess = n;
    }
  }
  AliceStrategy alice{uniform, guess};
  BobStrategy bob{uniform, best_bob_guesses(t, uniform, guess)};
  return {alice, bob};
}

// Alice optimizes her mix and guess knowing Bob picks his coins at random.
// Alice guesses first, so Bob's guesses adapt to hers rather than block them.
inline StrategyPair alice_best_vs_random(const PayoffTable& t, double grid_step) {
  const auto uniform = uniform_mix(t.counts());
  const std::vector<double> va = detail::alice_table(t, uniform);
  double top = -1.0;
  for (double v : va) top = std::max(top, v);
  for (auto& mix : grid_mixes(t.counts(), grid_step)) {
    for (int n = 0; n < t.outcomes(); ++n) {
      double v = 0.0;
      for (int a = 0; a < t.counts(); ++a) v += mix[a] * va[a * t.outcomes() + n];
      if (v >= top - kTolerances.tie) {
        AliceStrategy alice{mix, n};
        return {alice, BobStrategy{uniform, best_bob_guesses(t, alice.mix, n)}};
      }
    }
  }
  throw std::logic_error("grid contains no pure mix");
}

// Bob best-responds to Alice's random play (with her best guess).
inline StrategyPair bob_best_vs_random(const PayoffTable& t, double grid_step) {
  StrategyPair pair = random_play(t);
  pair.bob = best_response_bob(t, pair.alice, grid_step);
  return pair;
}

}  // namespace qmorra
