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

// Idealized Jones-calculus model of the photon source: a pump half-waveplate
// sets the weights of the two Sagnac paths, then one half-waveplate acts on
// each output photon. Fitting matches basis probabilities and entanglement of
// an encoded coin state.

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <Eigen/Dense>

#include "qmorra/errors.hpp"
#include "qmorra/optimize.hpp"
#include "qmorra/qubit_map.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/rng.hpp"
#include "qmorra/tolerances.hpp"

namespace qmorra {

struct WaveplateConfig {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;

  // Half-waveplates have period pi.
  WaveplateConfig reduced() const {
    auto r = [](double a) {
      double v = std::fmod(a, kPi);
      if (v < 0.0) v += kPi;
      return v >= kPi ? 0.0 : v;
    };
    return {r(alpha1), r(alpha2), r(alpha3)};
  }
};

inline Eigen::Matrix2d hwp_jones(double alpha) {
  const double c = std::cos(2 * alpha), s = std::sin(2 * alpha);
  Eigen::Matrix2d m;
  m << c, s, s, -c;
  return m;
}

inline TwoQubitState simulate_setup(const WaveplateConfig& cfg) {
  Eigen::Vector4cd source(0.0, std::cos(2 * cfg.alpha1), std::sin(2 * cfg.alpha1), 0.0);
  const Eigen::Matrix2d a = hwp_jones(cfg.alpha2), b = hwp_jones(cfg.alpha3);
  Eigen::Matrix4cd plates;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) plates.block<2, 2>(2 * i, 2 * j) = (a(i, j) * b).cast<Complex>();
  }
  return plates * source;
}

inline double hellinger_fidelity(const std::array<double, 4>& q, const std::array<double, 4>& q_sim) {
  double f = 0.0;
  for (int i = 0; i < 4; ++i) f += std::sqrt(std::max(0.0, q[i]) * std::max(0.0, q_sim[i]));
  return f;
}

struct FitTarget {
  std::array<double, 4> probabilities{};
  double entropy = 0.0;
};

// Encoded |j_theta> for the one-coin, two-player game.
inline FitTarget fit_target(double theta, int j) {
  if (j < 1 || j > 2) throw ValidationError("target index j must be 1 or 2", "j");
  const TwoQubitState s = embed_qutrit(coin_state(GameConfig{2, 1, theta}, j));
  return {basis_probabilities(s), entanglement_entropy(s)};
}

struct CostComponents {
  double cost = 0.0;
  double fidelity = 0.0;
  double entropy_gap = 0.0;
};

inline CostComponents fit_cost(const WaveplateConfig& cfg, const FitTarget& target) {
  const TwoQubitState s = simulate_setup(cfg);
  CostComponents c;
  c.fidelity = hellinger_fidelity(target.probabilities, basis_probabilities(s));
  c.entropy_gap = std::abs(target.entropy - entanglement_entropy(s));
  c.cost = 1.0 - c.fidelity + c.entropy_gap;
  return c;
}

inline CostComponents fit_cost(const WaveplateConfig& cfg, double theta, int j) {
  return fit_cost(cfg, fit_target(theta, j));
}

struct FitResult {
  double theta = 0.0;
  int j = 1;
  WaveplateConfig alpha_opt;
  double cost = 1.0;
  double fidelity = 0.0;
  double entropy_gap = 0.0;
  long evaluations = 0;
  int restarts = 0;
  bool success = false;
};

struct WaveplateFitOptions {
  int restarts = 32;
  double tol = kTolerances.waveplate_fit;
  std::uint64_t seed = 0xC0FFEE;
};

// Multi-start quasi-Newton over [0, pi)^3. Restarts run in order and stop at
// the first one under tolerance; otherwise the lowest cost wins (earliest
// restart on ties).
inline FitResult fit_waveplates(double theta, int j, const WaveplateFitOptions& options = {}) {
  const FitTarget target = fit_target(theta, j);
  auto objective = [&](const Eigen::VectorXd& x) {
    return fit_cost(WaveplateConfig{x(0), x(1), x(2)}, target).cost;
  };
  const Box box = Box::periodic_cube(3, kPi);
  MinimizeOptions mopt;
  mopt.target = 0.01 * options.tol;

  FitResult best;
  best.theta = theta;
  best.j = j;
  for (int r = 0; r < options.restarts; ++r) {
    CounterRng rng(CounterRng::derive(options.seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(3);
    for (int i = 0; i < 3; ++i) x0(i) = kPi * rng.uniform();
    const MinimizeResult m = minimize_bfgs(objective, x0, box, mopt);
    best.evaluations += m.evaluations;
    best.restarts = r + 1;
    if (m.value < best.cost) {
      const WaveplateConfig cfg = WaveplateConfig{m.x(0), m.x(1), m.x(2)}.reduced();
      const CostComponents c = fit_cost(cfg, target);
      best.alpha_opt = cfg;
      best.cost = c.cost;
      best.fidelity = c.fidelity;
      best.entropy_gap = c.entropy_gap;
    }
    if (best.cost < options.tol) break;
  }
  best.success = best.cost < options.tol;
  return best;
}

}  // namespace qmorra
