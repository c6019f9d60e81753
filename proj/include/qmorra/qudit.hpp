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

// Dense qudit operators for the deformed Morra game: the Fourier matrix, the
// deformed clock Z_theta, the deformed shift X_theta = F^dag Z_theta F and the
// coin states X_theta^k |0>.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmorra/errors.hpp"
#include "qmorra/tolerances.hpp"

namespace qmorra {

using Complex = std::complex<double>;
using AmplitudeVector = Eigen::VectorXcd;
using UnitaryMatrix = Eigen::MatrixXcd;
using ProbabilityVector = std::vector<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduces an angle to [0, 2pi).
inline double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// n players each holding 0..m coins; the pool has r = n*m coins and the
// shared register is a qudit of dimension r + 1.
struct GameConfig {
  int players = 2;
  int coins_per_player = 1;
  double theta = 2.0 * kPi / 3.0;

  int total_coins() const { return players * coins_per_player; }
  int dim() const { return total_coins() + 1; }

  void validate() const {
    if (players < 2) throw ValidationError("players must be >= 2", "players");
    if (coins_per_player < 1) {
      throw ValidationError("coins_per_player must be >= 1", "coins_per_player");
    }
    if (!std::isfinite(theta)) throw ValidationError("theta must be finite", "theta");
  }
};

namespace detail {

inline void require_dim(int d) {
  if (d < 2) {
    throw ValidationError("dimension must be >= 2, got " + std::to_string(d), "dim");
  }
}

inline Complex root_of_unity(int d, long long power) {
  const long long k = ((power % d) + d) % d;
  return std::polar(1.0, kTwoPi * static_cast<double>(k) / d);
}

}  // namespace detail

// F_{j,j'} = omega^{j j'} / sqrt(d), omega = exp(2 pi i / d).
inline UnitaryMatrix fourier(int d) {
  detail::require_dim(d);
  UnitaryMatrix f(d, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      f(j, k) = scale * detail::root_of_unity(d, static_cast<long long>(j) * k);
    }
  }
  return f;
}

inline UnitaryMatrix deformed_z(int d, double theta) {
  detail::require_dim(d);
  theta = reduce_angle(theta);
  UnitaryMatrix z = UnitaryMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) z(k, k) = std::polar(1.0, k * theta);
  return z;
}

// x_j(theta) = (1/d) sum_k exp(i k theta) omega^{-k j}: amplitude of |j> in
// X_theta |0>.
inline Complex coin_coefficient(int d, int j, double theta) {
  detail::require_dim(d);
  if (j < 0 || j >= d) {
    throw ValidationError("outcome index " + std::to_string(j) + " out of range", "j");
  }
  theta = reduce_angle(theta);
  Complex sum = 0.0;
  for (int k = 0; k < d; ++k) {
    sum += std::polar(1.0, k * theta) * detail::root_of_unity(d, -static_cast<long long>(k) * j);
  }
  return sum / static_cast<double>(d);
}

// Circulant: entry (a, b) is x_{(a - b) mod d}(theta).
inline UnitaryMatrix deformed_x(int d, double theta) {
  detail::require_dim(d);
  std::vector<Complex> column(d);
  for (int j = 0; j < d; ++j) column[j] = coin_coefficient(d, j, theta);
  UnitaryMatrix x(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) x(a, b) = column[((a - b) % d + d) % d];
  }
  return x;
}

inline UnitaryMatrix classical_shift(int d) {
  detail::require_dim(d);
  UnitaryMatrix x = UnitaryMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) x((a + 1) % d, a) = 1.0;
  return x;
}

inline AmplitudeVector basis_state(int d, int k) {
  AmplitudeVector v = AmplitudeVector::Zero(d);
  v(k) = 1.0;
  return v;
}

inline double max_abs_entry(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const UnitaryMatrix& u, double tol = kTolerances.unitarity) {
  if (u.rows() != u.cols()) return false;
  const auto id = UnitaryMatrix::Identity(u.rows(), u.cols());
  return max_abs_entry(u.adjoint() * u - id) <= tol;
}

inline UnitaryMatrix matrix_power(const UnitaryMatrix& u, int k) {
  UnitaryMatrix result = UnitaryMatrix::Identity(u.rows(), u.cols());
  for (int i = 0; i < k; ++i) result = u * result;
  return result;
}

// |k_theta> = X_theta^k |0>, evaluated through X_theta^k = X_{k theta}.
inline AmplitudeVector coin_state(const GameConfig& config, int k) {
  config.validate();
  const int r = config.total_coins();
  if (k < 0 || k > r) {
    throw ValidationError("coin total " + std::to_string(k) + " outside [0, " +
                              std::to_string(r) + "]",
                          "k");
  }
  const int d = config.dim();
  AmplitudeVector state(d);
  for (int j = 0; j < d; ++j) state(j) = coin_coefficient(d, j, k * config.theta);
  return state;
}

// Born probabilities p(n) = |<n|state>|^2.
inline ProbabilityVector outcome_distribution(const AmplitudeVector& state,
                                              double tol = kTolerances.normalization) {
  if (state.size() == 0) throw ValidationError("empty state", "state");
  ProbabilityVector p(static_cast<std::size_t>(state.size()));
  double total = 0.0;
  for (Eigen::Index n = 0; n < state.size(); ++n) {
    p[n] = std::norm(state(n));
    total += p[n];
  }
  if (std::abs(total - 1.0) > tol) {
    throw ValidationError("state is not normalized (norm^2 = " + std::to_string(total) + ")",
                          "state");
  }
  return p;
}

}  // namespace qmorra
