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

// Qutrit-to-two-qubit encoding. The three coin totals map onto the symmetric
// subspace (|00>, (|01>+|10>)/sqrt2, |11>); the singlet is the unused fourth
// basis vector.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "qmorra/errors.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/tolerances.hpp"

namespace qmorra {

using TwoQubitState = Eigen::Vector4cd;
using TwoQubitMatrix = Eigen::Matrix4cd;

// Columns are the encoded basis 0~, 1~, 2~, 3~ (singlet) in the computational
// basis 00, 01, 10, 11.
inline TwoQubitMatrix basis_change_v() {
  const double h = 1.0 / std::sqrt(2.0);
  TwoQubitMatrix v;
  v << 1, 0, 0, 0,
       0, h, 0, h,
       0, h, 0, -h,
       0, 0, 1, 0;
  return v;
}

inline TwoQubitState singlet_state() { return basis_change_v().col(3); }

inline TwoQubitState embed_qutrit(const AmplitudeVector& state3) {
  if (state3.size() != 3) {
    throw ValidationError("embedding expects a qutrit state", "state");
  }
  Eigen::Vector4cd padded;
  padded << state3(0), state3(1), state3(2), 0.0;
  return basis_change_v() * padded;
}

// X_theta extended to four levels so that it fixes the singlet.
inline TwoQubitMatrix x4(double theta) {
  TwoQubitMatrix out = TwoQubitMatrix::Zero();
  out.topLeftCorner<3, 3>() = deformed_x(3, theta);
  out(3, 3) = 1.0;
  return out;
}

inline TwoQubitMatrix x_theta_two_qubit(double theta) {
  const TwoQubitMatrix v = basis_change_v();
  return v * x4(theta) * v.adjoint();
}

// Probabilities of 00, 01, 10, 11.
inline std::array<double, 4> basis_probabilities(const TwoQubitState& s) {
  return {std::norm(s(0)), std::norm(s(1)), std::norm(s(2)), std::norm(s(3))};
}

// Von Neumann entropy (bits) of either single-qubit reduction.
inline double entanglement_entropy(const TwoQubitState& s) {
  Eigen::Matrix2cd m;
  m << s(0), s(1), s(2), s(3);
  const Eigen::Matrix2cd rho = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho, Eigen::EigenvaluesOnly);
  double entropy = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double lambda = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
    if (lambda > 0.0) entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

// Qubits needed for a register holding totals 0..r.
inline int qubit_count(int r) {
  if (r < 1) throw ValidationError("total coins must be at least 1", "r");
  int q = 0;
  while ((1LL << q) < static_cast<long long>(r) + 1) ++q;
  return q;
}

}  // namespace qmorra
