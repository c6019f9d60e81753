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

// Dataset builders behind the command-line tool: theta sweeps with a
// Monte-Carlo emulation of the experiment, the reference table, strategy
// comparisons, circuit synthesis and waveplate fitting batches.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmorra/circuit.hpp"
#include "qmorra/errors.hpp"
#include "qmorra/game.hpp"
#include "qmorra/optics.hpp"
#include "qmorra/parallel.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/rng.hpp"
#include "qmorra/serialize.hpp"
#include "qmorra/strategy.hpp"

namespace qmorra {

struct SweepSpec {
  double theta_min = 0.0;
  double theta_max = kTwoPi;
  int points = 34;
  long long rounds = 150000;  // per (theta, Alice coin count)
  std::uint64_t seed = 2024;

  void validate() const {
    if (!std::isfinite(theta_min) || !std::isfinite(theta_max)) {
      throw ValidationError("theta bounds must be finite", "theta_min");
    }
    if (theta_min < 0.0 || theta_max > kTwoPi + 1e-12) {
      throw ValidationError("theta bounds must lie in [0, 2pi]", theta_min < 0.0 ? "theta_min" : "theta_max");
    }
    if (theta_max < theta_min) throw ValidationError("theta_max < theta_min", "theta_max");
    if (points < 2) throw ValidationError("points must be >= 2", "points");
    if (rounds < 1) throw ValidationError("rounds must be >= 1", "rounds");
  }

  // Evenly spaced, both endpoints included.
  std::vector<double> grid() const {
    validate();
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
      g[i] = theta_min + (theta_max - theta_min) * static_cast<double>(i) / (points - 1);
    }
    return g;
  }
};

inline std::vector<double> theta_grid(double lo, double hi, int points) {
  SweepSpec s;
  s.theta_min = lo;
  s.theta_max = hi;
  s.points = points;
  return s.grid();
}

struct SweepRow {
  double theta = 0.0;
  int a = 0;
  int n = 0;
  double exact = 0.0;
  std::optional<double> empirical;
};

// Frequencies of each total when Alice plays `a` coins and Bob picks 0 or 1
// uniformly, over `rounds` seeded rounds.
inline std::array<double, 3> simulate_alice_rounds(double theta, int a, long long rounds,
                                                   std::uint64_t key) {
  const GameConfig config{2, 1, theta};
  std::array<ProbabilityVector, 2> dist;
  for (int b = 0; b < 2; ++b) {
    const std::array<int, 2> coins{a, b};
    dist[b] = round_distribution(config, coins);
  }
  std::array<long long, 3> counts{};
  CounterRng rng(key);
  for (long long k = 0; k < rounds; ++k) {
    const int b = static_cast<int>(rng.next() >> 63);
    ++counts[sample_index(dist[b], rng.uniform())];
  }
  std::array<double, 3> freq{};
  for (int n = 0; n < 3; ++n) freq[n] = static_cast<double>(counts[n]) / static_cast<double>(rounds);
  return freq;
}

// One row per (theta, a, n); empirical columns only when monte_carlo is set.
inline std::vector<SweepRow> cmd_sweep(const SweepSpec& spec, bool monte_carlo = true) {
  const std::vector<double> grid = spec.grid();
  auto per_theta = parallel_map(grid.size(), [&](std::size_t i) {
    std::vector<SweepRow> rows;
    for (int a = 0; a < 2; ++a) {
      std::optional<std::array<double, 3>> freq;
      if (monte_carlo) {
        freq = simulate_alice_rounds(grid[i], a, spec.rounds,
                                     CounterRng::derive(spec.seed, 2 * i + static_cast<std::size_t>(a)));
      }
      for (int n = 0; n < 3; ++n) {
        SweepRow row{grid[i], a, n, alice_average_prob(grid[i], a, n), std::nullopt};
        if (freq) row.empirical = (*freq)[n];
        rows.push_back(row);
      }
    }
    return rows;
  });
  std::vector<SweepRow> out;
  for (auto& rows : per_theta) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

// Total-variation distance between exact and empirical P_a(.) for each
// consecutive (theta, a) block of three rows.
inline std::vector<double> sweep_tv_distances(const std::vector<SweepRow>& rows) {
  std::vector<double> tv;
  for (std::size_t i = 0; i + 2 < rows.size(); i += 3) {
    double d = 0.0;
    for (std::size_t k = i; k < i + 3; ++k) d += std::abs(rows[k].exact - rows[k].empirical.value_or(rows[k].exact));
    tv.push_back(0.5 * d);
  }
  return tv;
}

inline Table sweep_table(const std::vector<SweepRow>& rows) {
  Table t({"theta", "a", "n", "exact", "empirical"});
  for (const auto& r : rows) {
    t.add_row({r.theta, static_cast<long long>(r.a), static_cast<long long>(r.n), r.exact,
               r.empirical ? Table::Cell(*r.empirical) : Table::Cell()});
  }
  return t;
}

struct Table1Row {
  std::string theta_label;
  double theta = 0.0;
  int coins = 0;
  int guess = 0;
  double analytic = 0.0;
  double measured = 0.0;  // lab reading
  double gap() const { return std::abs(analytic - measured); }
};

inline std::vector<Table1Row> cmd_table1() {
  struct Column {
    const char* label;
    double theta;
    std::array<double, 6> measured;  // P_0(0..2), P_1(0..2)
  };
  static const std::array<Column, 4> kColumns{{
      {"0", 0.0, {0.99, 1.19e-3, 7.63e-3, 0.98, 2.46e-3, 1.67e-4}},
      {"2pi/3", 2 * kPi / 3, {0.50, 0.49, 2.46e-3, 7.86e-3, 0.50, 0.49}},
      {"pi", kPi, {0.57, 0.30, 0.13, 0.57, 0.30, 0.13}},
      {"4pi/3", 4 * kPi / 3, {0.51, 1.43e-3, 0.49, 1.26e-2, 0.49, 0.49}},
  }};
  std::vector<Table1Row> rows;
  for (const auto& col : kColumns) {
    for (int i = 0; i < 2; ++i) {
      for (int g = 0; g < 3; ++g) {
        rows.push_back({col.label, col.theta, i, g, alice_average_prob(col.theta, i, g),
                        col.measured[3 * i + g]});
      }
    }
  }
  return rows;
}

inline Table table1_table(const std::vector<Table1Row>& rows) {
  Table t({"theta_label", "theta", "coins", "guess", "analytic", "measured", "gap"});
  for (const auto& r : rows) {
    t.add_row({r.theta_label, r.theta, static_cast<long long>(r.coins),
               static_cast<long long>(r.guess), r.analytic, r.measured, r.gap()});
  }
  return t;
}

enum class Scenario { kRandomVsRandom, kAliceBest, kBobBest, kEquilibrium };

inline const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::kRandomVsRandom: return "random-vs-random";
    case Scenario::kAliceBest: return "alice-best";
    case Scenario::kBobBest: return "bob-best";
    case Scenario::kEquilibrium: return "equilibrium";
  }
  return "?";
}

inline Scenario parse_scenario(const std::string& s) {
  for (Scenario v : {Scenario::kRandomVsRandom, Scenario::kAliceBest, Scenario::kBobBest,
                     Scenario::kEquilibrium}) {
    if (s == to_string(v)) return v;
  }
  throw ValidationError("unknown scenario '" + s + "'", "scenario");
}

struct StrategyRow {
  double theta = 0.0;
  Scenario scenario = Scenario::kEquilibrium;
  AliceStrategy alice;
  BobStrategy bob;
  double p_alice = 0.0;
  double p_bob = 0.0;
  double p_draw = 0.0;
  std::optional<EquilibriumResult> equilibrium;  // equilibrium scenario only
};

inline StrategyRow evaluate_scenario(double theta, Scenario scenario, double grid_step) {
  const PayoffTable table(theta, 1);
  StrategyRow row;
  row.theta = theta;
  row.scenario = scenario;
  StrategyPair pair;
  switch (scenario) {
    case Scenario::kRandomVsRandom: pair = random_play(table); break;
    case Scenario::kAliceBest: pair = alice_best_vs_random(table, grid_step); break;
    case Scenario::kBobBest: pair = bob_best_vs_random(table, grid_step); break;
    case Scenario::kEquilibrium: {
      EquilibriumResult e = find_equilibrium(table, grid_step);
      pair = {e.alice, e.bob};
      row.equilibrium = std::move(e);
      break;
    }
  }
  row.p_alice = alice_win_prob(table, pair.alice, pair.bob);
  row.p_bob = bob_win_prob(table, pair.alice, pair.bob);
  row.p_draw = draw_prob(table, pair.alice, pair.bob);
  row.alice = std::move(pair.alice);
  row.bob = std::move(pair.bob);
  return row;
}

inline std::vector<StrategyRow> cmd_strategies(const std::vector<double>& grid,
                                               const std::vector<Scenario>& scenarios,
                                               double grid_step = 0.01) {
  grid_divisions(grid_step);
  auto per_theta = parallel_map(grid.size(), [&](std::size_t i) {
    std::vector<StrategyRow> rows;
    for (Scenario s : scenarios) rows.push_back(evaluate_scenario(grid[i], s, grid_step));
    return rows;
  });
  std::vector<StrategyRow> out;
  for (auto& rows : per_theta) out.insert(out.end(), rows.begin(), rows.end());
  return out;
}

inline Table strategies_table(const std::vector<StrategyRow>& rows) {
  Table t({"theta", "scenario", "p_alice", "p_bob", "p_draw", "purity", "exact", "max_gain"});
  for (const auto& r : rows) {
    const auto& e = r.equilibrium;
    t.add_row({r.theta, std::string(to_string(r.scenario)), r.p_alice, r.p_bob, r.p_draw,
               e ? Table::Cell(std::string(to_string(e->purity))) : Table::Cell(),
               e ? Table::Cell(std::string(e->exact ? "true" : "false")) : Table::Cell(),
               e ? Table::Cell(e->max_gain) : Table::Cell()});
  }
  return t;
}

// Purity classification CSV: theta, p_alice, p_bob, p_draw, purity.
inline Table purity_table(const PurityScan& scan) {
  Table t({"theta", "p_alice", "p_bob", "p_draw", "purity"});
  for (const auto& p : scan.points) {
    const auto& e = p.equilibrium;
    t.add_row({e.theta, e.p_alice, e.p_bob, e.p_draw, std::string(to_string(e.purity))});
  }
  return t;
}

inline std::vector<SynthesisReport> cmd_synth(const std::vector<double>& grid,
                                              const FitOptions& options = {}) {
  return parallel_map(grid.size(), [&](std::size_t i) { return synthesize(grid[i], options); });
}

inline Table synth_table(const std::vector<SynthesisReport>& reports) {
  Table t({"theta", "cnot_count", "two_cnot_feasible", "residual", "iterations", "restarts_used",
           "verified", "convention"});
  for (const auto& r : reports) {
    t.add_row({r.theta, static_cast<long long>(r.cnot_count),
               std::string(r.two_cnot_feasible.value_or(false) ? "true" : "false"), r.residual,
               static_cast<long long>(r.iterations), static_cast<long long>(r.restarts_used),
               std::string(r.verified ? "true" : "false"), r.convention});
  }
  return t;
}

// Both targets j = 1, 2 per theta.
inline std::vector<FitResult> cmd_fit(const std::vector<double>& grid,
                                      const WaveplateFitOptions& options = {}) {
  auto per_theta = parallel_map(grid.size(), [&](std::size_t i) {
    return std::array<FitResult, 2>{fit_waveplates(grid[i], 1, options),
                                    fit_waveplates(grid[i], 2, options)};
  });
  std::vector<FitResult> out;
  for (const auto& pair : per_theta) out.insert(out.end(), pair.begin(), pair.end());
  return out;
}

inline Table fit_table(const std::vector<FitResult>& fits) {
  Table t({"theta", "j", "alpha1", "alpha2", "alpha3", "cost", "fidelity", "entropy_gap",
           "restarts_used"});
  for (const auto& f : fits) {
    t.add_row({f.theta, static_cast<long long>(f.j), f.alpha_opt.alpha1, f.alpha_opt.alpha2,
               f.alpha_opt.alpha3, f.cost, f.fidelity, f.entropy_gap,
               static_cast<long long>(f.restarts)});
  }
  return t;
}

}  // namespace qmorra
