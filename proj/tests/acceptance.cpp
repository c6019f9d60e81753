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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qmorra/qmorra.hpp"
#include "qmorra/service.hpp"

namespace {

using namespace qmorra;

int g_failures = 0;
// Lab readings are quoted to two decimals; 0.98 against 1 sits exactly on the bound.
constexpr double kLabTol = 0.02 + 1e-12;

void report(const char* id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %-3s %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<double> sweep_grid() { return theta_grid(0.0, kTwoPi, 34); }

double max_dev(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

double triple_gap(const EquilibriumResult& e, double pa, double pb, double pd) {
  return std::max({std::abs(e.p_alice - pa), std::abs(e.p_bob - pb), std::abs(e.p_draw - pd)});
}

void classical_recovery() {
  const double t = 2 * kPi / 3;
  const double dx = max_dev(deformed_x(3, t), classical_shift(3));
  const EquilibriumResult e = find_equilibrium(t);
  const double dm = std::max(std::abs(e.alice.mix[0] - 0.5), std::abs(e.bob.mix[0] - 0.5));
  const double dv = triple_gap(e, 0.5, 0.5, 0.0);
  report("1", "classical-recovery", dx <= 1e-12 && e.exact && dm <= 1e-9 && dv <= 1e-9,
         fmt("|X-shift|=%.2e mix_dev=%.2e value_dev=%.2e", dx, dm, dv));
}

void swap_point() {
  const double t = 4 * kPi / 3;
  const GameConfig c{2, 1, t};
  const double d1 = (coin_state(c, 1) - basis_state(3, 2)).cwiseAbs().maxCoeff();
  const double d2 = (coin_state(c, 2) - basis_state(3, 1)).cwiseAbs().maxCoeff();
  const double p = alice_average_prob(t, 0, 2);
  const double exp_gap = std::abs(p - 0.49);
  report("2", "swap-point", d1 <= 1e-12 && d2 <= 1e-12 && std::abs(p - 0.5) <= 1e-12 && exp_gap <= kLabTol,
         fmt("|1>-|2~|=%.2e |2>-|1~|=%.2e P0(2)=%.15f", d1, d2, p) + fmt(" lab_gap=%.3f", exp_gap));
}

void degenerate_point() {
  double worst = 0.0, lab = 0.0;
  for (double t : {0.0, kTwoPi}) {
    const GameConfig c{2, 1, t};
    for (int k = 0; k <= 2; ++k) {
      worst = std::max(worst, (coin_state(c, k) - basis_state(3, 0)).cwiseAbs().maxCoeff());
    }
    for (int a = 0; a <= 1; ++a) worst = std::max(worst, std::abs(alice_average_prob(t, a, 0) - 1.0));
  }
  for (const Table1Row& r : cmd_table1()) {
    if (r.theta_label == "0" && r.guess == 0) lab = std::max(lab, r.gap());
  }
  report("3", "degenerate-point", worst <= 1e-12 && lab <= kLabTol, fmt("max_dev=%.2e lab_gap=%.3f", worst, lab));
}

void pi_point() {
  double dev = 0.0, asym = 0.0, lab = 0.0;
  for (int a = 0; a <= 1; ++a) dev = std::max(dev, std::abs(alice_average_prob(kPi, a, 0) - 5.0 / 9));
  for (int n = 0; n <= 2; ++n) {
    asym = std::max(asym, std::abs(alice_average_prob(kPi, 0, n) - alice_average_prob(kPi, 1, n)));
  }
  for (const Table1Row& r : cmd_table1()) {
    if (r.theta_label == "pi" && r.guess == 0) lab = std::max(lab, r.gap());
  }
  report("4", "pi-point", dev <= 1e-12 && asym <= 1e-12 && lab <= kLabTol,
         fmt("P_a(0)_dev=%.2e a0_vs_a1=%.2e lab_gap=%.4f", dev, asym, lab));
}

void third_pi_equilibrium() {
  const double t = kPi / 3;
  const EquilibriumResult e = find_equilibrium(t);
  const bool shape = e.exact && e.purity == Purity::kPure && e.alice.mix[0] == 1.0 && e.alice.guess == 0 &&
                     e.bob.mix[1] == 1.0 && e.bob.guesses[1] == 1;
  // brute force over the pure strategy pair
  const PayoffTable tab(t, 1);
  const AliceStrategy a{{1.0, 0.0}, 0};
  const BobStrategy b{{0.0, 1.0}, {1, 1}};
  const double bf = triple_gap(e, alice_win_prob(tab, a, b), bob_win_prob(tab, a, b), draw_prob(tab, a, b));
  const double exact = triple_gap(e, 4.0 / 9, 4.0 / 9, 1.0 / 9);
  const double pub = triple_gap(e, 0.46, 0.44, 0.10);
  report("5", "third-pi-equilibrium", shape && bf <= 1e-9 && exact <= 1e-9 && pub <= kLabTol,
         fmt("brute_dev=%.2e exact_dev=%.2e reference_gap=%.4f", bf, exact, pub));
}

void purity_region() {
  std::vector<double> grid;
  for (int i = 0; i * 0.05 <= kTwoPi; ++i) grid.push_back(i * 0.05);
  const PurityScan scan = purity_region_scan(grid, 0.01);
  auto class_at = [&](double t) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (std::abs(grid[i] - t) < std::abs(grid[best] - t)) best = i;
    }
    return scan.points[best].purity();
  };
  bool ok = class_at(kPi / 3) == Purity::kPure;
  for (double t : {5 * kPi / 3 - 0.1, 5 * kPi / 3, 5 * kPi / 3 + 0.1}) ok = ok && class_at(t) == Purity::kPure;
  for (double t : {kPi / 2, kPi, 3 * kPi / 2}) ok = ok && class_at(t) == Purity::kMixed;
  const PurityScan exact = purity_region_scan(std::vector<double>{kPi / 3, kPi / 2, kPi, 3 * kPi / 2, 5 * kPi / 3}, 0.01);
  ok = ok && exact.points[0].purity() == Purity::kPure && exact.points[4].purity() == Purity::kPure;
  for (int i = 1; i <= 3; ++i) ok = ok && exact.points[i].purity() == Purity::kMixed;
  double lo = 9.0, hi = 9.0;
  if (scan.boundaries.size() == 2) {
    lo = std::abs(scan.boundaries[0] - 4 * kPi / 9);
    hi = std::abs(scan.boundaries[1] - 14 * kPi / 9);
  }
  report("6", "purity-region", ok && lo <= 0.1 && hi <= 0.1,
         "boundaries=" + std::to_string(scan.boundaries.size()) + fmt(" lo_off=%.4f hi_off=%.4f", lo, hi));
}

void pi_draw() {
  const AliceStrategy a{{0.5, 0.5}, 0};
  const BobStrategy b{{0.5, 0.5}, {1, 1}};
  const double d = draw_prob(kPi, a, b);
  report("7", "pi-draw", std::abs(d - 2.0 / 9) <= 1e-12 && std::abs(d - 0.2) <= 0.03,
         fmt("P_draw=%.15f reference_gap=%.4f", d, std::abs(d - 0.2)));
}

void monte_carlo() {
  const auto start = std::chrono::steady_clock::now();
  const SweepSpec spec;
  const auto rows = cmd_sweep(spec, true);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto tv = sweep_tv_distances(rows);
  double worst = 0.0;
  for (double v : tv) worst = std::max(worst, v);
  report("8", "monte-carlo-fidelity", tv.size() == 68 && worst <= 0.01 && secs < 120.0,
         fmt("worst_tv=%.5f runtime=%.1fs", worst, secs));
}

void two_qubit_map() {
  double fix = 0.0, regroup = 0.0;
  for (double t : sweep_grid()) {
    const TwoQubitMatrix x = x_theta_two_qubit(t);
    fix = std::max(fix, (x * singlet_state() - singlet_state()).cwiseAbs().maxCoeff());
    TwoQubitState s = TwoQubitState::Zero();
    s(0) = 1.0;
    for (int k = 1; k <= 2; ++k) {
      s = x * s;
      const auto q = basis_probabilities(s);
      const ProbabilityVector p = outcome_distribution(coin_state({2, 1, t}, k));
      regroup = std::max({regroup, std::abs(q[0] - p[0]), std::abs(q[1] + q[2] - p[1]), std::abs(q[3] - p[2])});
    }
  }
  report("9", "two-qubit-map", fix <= 1e-12 && regroup <= 1e-12, fmt("singlet_dev=%.2e regroup_dev=%.2e", fix, regroup));
}

void circuits() {
  bool gamma_ok = true;
  for (double t : {2 * kPi / 3, 4 * kPi / 3}) gamma_ok = gamma_ok && two_cnot_gamma(x_theta_two_qubit(t)).real;
  for (double t : {kPi / 4, kPi / 2, kPi}) gamma_ok = gamma_ok && !two_cnot_gamma(x_theta_two_qubit(t)).real;
  double fixed = 0.0;
  bool matched = true;
  for (double t : {2 * kPi / 3, 4 * kPi / 3}) {
    const ConventionMatch m = match_convention(fixed_two_cnot_circuit(t), x_theta_two_qubit(t));
    matched = matched && m.matched;
    fixed = std::max(fixed, m.residual);
  }
  double worst = 0.0;
  int restarts = 0;
  for (double t : sweep_grid()) {
    const SynthesisReport r = fit_three_cnot(x_theta_two_qubit(t));
    worst = std::max(worst, r.residual);
    restarts = std::max(restarts, r.restarts_used);
  }
  for (int i = 0; i < 20; ++i) {
    const Eigen::Matrix4cd u = random_unitary(4, 1000 + i);
    const SynthesisReport r = fit_three_cnot(u);
    worst = std::max(worst, r.residual);
    restarts = std::max(restarts, r.restarts_used);
  }
  report("10", "circuit-synthesis", gamma_ok && matched && fixed < 1e-9 && worst < 1e-8,
         std::string("gamma_ok=") + (gamma_ok ? "1" : "0") + fmt(" fixed_residual=%.2e fit_worst_D=%.2e", fixed, worst) +
             " max_restarts=" + std::to_string(restarts));
}

void waveplates() {
  double worst = 0.0;
  for (const FitResult& f : cmd_fit(sweep_grid())) worst = std::max(worst, f.cost);
  const double s1 = fit_target(2 * kPi / 3, 1).entropy;
  const double s0 = std::max(fit_target(0.0, 1).entropy, fit_target(0.0, 2).entropy);
  const FitResult f1 = fit_waveplates(2 * kPi / 3, 1);
  const double sim1 = entanglement_entropy(simulate_setup(f1.alpha_opt));
  report("11", "waveplate-fit", worst < 1e-6 && std::abs(s1 - 1.0) <= 1e-6 && std::abs(s0) <= 1e-6,
         fmt("worst_cost=%.2e S(2pi/3)=%.9f S(0)=%.2e", worst, s1, s0) + fmt(" S_sim(2pi/3)=%.6f", sim1));
}

void generalization() {
  double unit = 0.0, norm = 0.0, perm = 0.0;
  bool qubits = true;
  for (auto [n, m] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    const GameConfig c{n, m, 0.0};
    const int r = c.total_coins(), d = c.dim();
    for (double t : sweep_grid()) {
      const UnitaryMatrix x = deformed_x(d, t);
      unit = std::max(unit, max_dev(x.adjoint() * x, UnitaryMatrix::Identity(d, d)));
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += std::norm(coin_coefficient(d, j, t));
      norm = std::max(norm, std::abs(s - 1.0));
    }
    perm = std::max(perm, max_dev(deformed_x(d, kTwoPi / (r + 1)), classical_shift(d)));
    qubits = qubits && qubit_count(r) == static_cast<int>(std::ceil(std::log2(r + 1.0)));
  }
  report("12", "n-player-generalization", unit <= 1e-12 && norm <= 1e-12 && perm <= 1e-12 && qubits,
         fmt("unitarity=%.2e norm=%.2e perm=%.2e", unit, norm, perm));
}

void service_replay() {
  long long rounds = 0, mismatches = 0;
  CounterRng rng(99);
  for (Role role : {Role::kAlice, Role::kBob}) {
    for (BotPreset bot : {BotPreset::kRandomRational, BotPreset::kStable, BotPreset::kNash}) {
      for (double t : {0.0, kPi / 3, 2.0, kPi, 4 * kPi / 3}) {
        const SessionSpec spec{t, role, bot, rng.next()};
        SessionState live(spec);
        const int alice_guess = live.policy().as_alice().guess;
        for (int k = 0; k < 300; ++k) {
          int g = static_cast<int>(rng.next() % 3);
          if (role == Role::kBob && g == alice_guess) g = (g + 1) % 3;
          live.play({static_cast<int>(rng.next() % 2), g});
        }
        const SessionState again = replay_session(spec, live.moves());
        for (std::size_t k = 0; k < live.history().size(); ++k) {
          ++rounds;
          if (again.history()[k].record.sampled_total != live.history()[k].record.sampled_total) ++mismatches;
        }
      }
    }
  }
  report("13", "service-replay", mismatches == 0 && rounds == 9000,
         "rounds=" + std::to_string(rounds) + " mismatches=" + std::to_string(mismatches) + " ui_built=0");
}

}  // namespace

int main() {
  classical_recovery();
  swap_point();
  degenerate_point();
  pi_point();
  third_pi_equilibrium();
  purity_region();
  pi_draw();
  monte_carlo();
  two_qubit_map();
  circuits();
  waveplates();
  generalization();
  service_replay();
  std::printf("%d/13 criteria passed\n", 13 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
