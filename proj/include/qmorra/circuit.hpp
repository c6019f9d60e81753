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

// Two-qubit circuits built from local gates and CNOTs: evaluation, a
// phase-blind distance, the two-CNOT realness test, the two hand-derived
// circuits of the undeformed and swapped games, and numerical fitting of the
// universal three-CNOT template.
//
// Gate convention:
//   U(t, p, l) = [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
//   RX(a) = exp(-i a X / 2), RZ(a) = exp(-i a Z / 2)
// Qubit 0 is the first tensor factor (most significant bit of the basis
// index). Layers are listed in time order.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qmorra/errors.hpp"
#include "qmorra/optimize.hpp"
#include "qmorra/qubit_map.hpp"
#include "qmorra/qudit.hpp"
#include "qmorra/rng.hpp"
#include "qmorra/tolerances.hpp"

namespace qmorra {

enum class GateKind { kU, kRx, kRz, kId };

struct Gate {
  GateKind kind = GateKind::kId;
  std::array<double, 3> angles{};  // RX/RZ use angles[0]

  static Gate u(double t, double p, double l) { return {GateKind::kU, {t, p, l}}; }
  static Gate rx(double a) { return {GateKind::kRx, {a, 0.0, 0.0}}; }
  static Gate rz(double a) { return {GateKind::kRz, {a, 0.0, 0.0}}; }
  static Gate id() { return {}; }
};

struct LocalLayer {
  Gate q0;
  Gate q1;
};

struct CnotLayer {
  int control = 0;
  int target = 1;
};

using Layer = std::variant<LocalLayer, CnotLayer>;

struct CircuitTemplate {
  std::vector<Layer> layers;

  int cnot_count() const {
    int n = 0;
    for (const auto& l : layers) n += std::holds_alternative<CnotLayer>(l) ? 1 : 0;
    return n;
  }
};

// Evaluation conventions tried when a transcribed circuit fails to verify.
struct GateConvention {
  bool time_order = true;         // false: first layer is the leftmost matrix factor
  bool qubit0_most_significant = true;

  std::string name() const {
    return std::string(time_order ? "time-order" : "product-order") + "/" +
           (qubit0_most_significant ? "q0-msb" : "q0-lsb");
  }
};

inline const std::array<GateConvention, 4> kConventions{{
    {true, true}, {false, true}, {true, false}, {false, false}}};

inline Eigen::Matrix2cd gate_matrix(const Gate& g) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  const double a = g.angles[0];
  switch (g.kind) {
    case GateKind::kU: {
      const double c = std::cos(a / 2), s = std::sin(a / 2);
      const double p = g.angles[1], l = g.angles[2];
      m << c, -std::polar(s, l), std::polar(s, p), std::polar(c, p + l);
      break;
    }
    case GateKind::kRx:
      m << std::cos(a / 2), -1i * std::sin(a / 2), -1i * std::sin(a / 2), std::cos(a / 2);
      break;
    case GateKind::kRz:
      m << std::polar(1.0, -a / 2), 0, 0, std::polar(1.0, a / 2);
      break;
    case GateKind::kId:
      m.setIdentity();
      break;
  }
  return m;
}

inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

inline Eigen::Matrix4cd cnot_matrix(int control, int target, bool qubit0_msb = true) {
  if (control == target || control < 0 || control > 1 || target < 0 || target > 1) {
    throw ValidationError("CNOT needs distinct qubits 0 and 1", "cnot");
  }
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  for (int idx = 0; idx < 4; ++idx) {
    const int bit0 = qubit0_msb ? (idx >> 1) & 1 : idx & 1;
    const int bit1 = qubit0_msb ? idx & 1 : (idx >> 1) & 1;
    std::array<int, 2> bits{bit0, bit1};
    if (bits[control]) bits[target] ^= 1;
    const int out = qubit0_msb ? (bits[0] << 1) | bits[1] : (bits[1] << 1) | bits[0];
    m(out, idx) = 1.0;
  }
  return m;
}

inline Eigen::Matrix4cd layer_matrix(const Layer& layer, bool qubit0_msb = true) {
  if (const auto* l = std::get_if<LocalLayer>(&layer)) {
    return qubit0_msb ? kron(gate_matrix(l->q0), gate_matrix(l->q1))
                      : kron(gate_matrix(l->q1), gate_matrix(l->q0));
  }
  const auto& c = std::get<CnotLayer>(layer);
  return cnot_matrix(c.control, c.target, qubit0_msb);
}

inline Eigen::Matrix4cd evaluate(const CircuitTemplate& circuit, const GateConvention& conv = {}) {
  Eigen::Matrix4cd w = Eigen::Matrix4cd::Identity();
  for (const auto& layer : circuit.layers) {
    const Eigen::Matrix4cd m = layer_matrix(layer, conv.qubit0_most_significant);
    w = conv.time_order ? Eigen::Matrix4cd(m * w) : Eigen::Matrix4cd(w * m);
  }
  return w;
}

// 1 - |tr(U^dag V)| / 4; zero iff U and V agree up to a global phase.
inline double circuit_distance(const Eigen::Matrix4cd& u, const Eigen::Matrix4cd& v) {
  return std::max(0.0, 1.0 - std::abs((u.adjoint() * v).trace()) / 4.0);
}

inline double verify_circuit(const CircuitTemplate& circuit, const Eigen::Matrix4cd& target,
                             const GateConvention& conv = {}) {
  return circuit_distance(evaluate(circuit, conv), target);
}

struct ConventionMatch {
  GateConvention convention;
  double residual = 1.0;
  bool matched = false;
};

// Tries the default convention first, then the remaining variants; returns
// the first that verifies, else the best residual seen.
inline ConventionMatch match_convention(const CircuitTemplate& circuit,
                                        const Eigen::Matrix4cd& target,
                                        double tol = kTolerances.fixed_circuit) {
  ConventionMatch best;
  for (const auto& conv : kConventions) {
    const double r = verify_circuit(circuit, target, conv);
    if (r < tol) return {conv, r, true};
    if (r < best.residual) best = {conv, r, false};
  }
  return best;
}

struct GammaTest {
  Complex gamma;      // principal branch of sqrt(det U)
  Complex gamma_alt;  // the other branch
  bool real = false;
};

inline GammaTest two_cnot_gamma(const Eigen::Matrix4cd& u, double tol = kTolerances.two_cnot) {
  if (!is_unitary(u, 1e-9)) throw ValidationError("matrix is not unitary", "unitary");
  using namespace std::complex_literals;
  Eigen::Matrix2cd sy;
  sy << 0, -1i, 1i, 0;
  const Eigen::Matrix4cd yy = kron(sy, sy);
  const Complex t = (u * yy * u.transpose() * yy).trace();
  const Complex root = std::sqrt(u.determinant());
  GammaTest g;
  g.gamma = t / root;
  g.gamma_alt = t / (-root);
  g.real = std::abs(g.gamma.imag()) < tol || std::abs(g.gamma_alt.imag()) < tol;
  return g;
}

inline bool two_cnot_feasible(const Eigen::Matrix4cd& u, double tol = kTolerances.two_cnot) {
  return two_cnot_gamma(u, tol).real;
}

// The two-CNOT circuits for theta = 2pi/3 and 4pi/3.
inline CircuitTemplate fixed_two_cnot_circuit(double theta) {
  const double b1 = std::acos(-1.0 / 3.0) / 2.0;
  const double b2 = kPi - b1;
  const double t = reduce_angle(theta);
  const LocalLayer middle{Gate::rx(-kPi / 3), Gate::rz(kPi / 3)};
  if (std::abs(t - 2 * kPi / 3) < 1e-9) {
    return {{LocalLayer{Gate::u(b2, kPi / 4, -kPi / 3), Gate::u(b1, 3 * kPi / 4, 2 * kPi / 3)},
             CnotLayer{0, 1}, middle, CnotLayer{0, 1},
             LocalLayer{Gate::u(b1, -2 * kPi / 3, kPi / 4), Gate::u(b2, kPi / 3, 3 * kPi / 4)}}};
  }
  if (std::abs(t - 4 * kPi / 3) < 1e-9) {
    return {{LocalLayer{Gate::u(b2, -kPi / 4, -2 * kPi / 3), Gate::u(b1, -3 * kPi / 4, kPi / 3)},
             CnotLayer{0, 1}, middle, CnotLayer{0, 1},
             LocalLayer{Gate::u(b1, -kPi / 3, -kPi / 4), Gate::u(b2, 2 * kPi / 3, -3 * kPi / 4)}}};
  }
  throw ValidationError("fixed circuits exist only for theta = 2pi/3 and 4pi/3", "theta");
}

// Local U layers interleaved with `cnots` CNOT(0 -> 1); 6 (cnots + 1) angles.
inline CircuitTemplate cnot_template(int cnots, const std::vector<double>& params) {
  if (cnots < 0 || cnots > 3) throw ValidationError("cnot count must be 0..3", "cnots");
  if (params.size() != static_cast<std::size_t>(6 * (cnots + 1))) {
    throw ValidationError("template needs 6 angles per local layer", "params");
  }
  CircuitTemplate c;
  for (int k = 0; k <= cnots; ++k) {
    const double* p = params.data() + 6 * k;
    c.layers.push_back(LocalLayer{Gate::u(p[0], p[1], p[2]), Gate::u(p[3], p[4], p[5])});
    if (k < cnots) c.layers.push_back(CnotLayer{0, 1});
  }
  return c;
}

struct SynthesisReport {
  double theta = 0.0;
  int cnot_count = 3;
  CircuitTemplate circuit;
  std::vector<double> parameters;  // empty for transcribed circuits
  double residual = 1.0;
  long iterations = 0;
  int restarts_used = 0;
  bool verified = false;
  std::string convention = GateConvention{}.name();
  std::optional<bool> two_cnot_feasible;
};

struct FitOptions {
  int restarts = 50;
  double tol = kTolerances.synthesis;
  std::uint64_t seed = 0x5eed;
};

// Multi-start fit of the template with `cnots` CNOTs. Restarts run in order
// and stop at the first success, so the result depends only on the seed.
inline SynthesisReport fit_cnot_template(const Eigen::Matrix4cd& target, int cnots,
                                         const FitOptions& options = {}) {
  const int n = 6 * (cnots + 1);
  const Eigen::Matrix4cd target_adj = target.adjoint();
  const Eigen::Matrix4cd cx = cnot_matrix(0, 1);
  auto build = [&](const Eigen::VectorXd& x) {
    Eigen::Matrix4cd w = Eigen::Matrix4cd::Identity();
    for (int k = 0; k <= cnots; ++k) {
      const Eigen::Matrix4cd local = kron(gate_matrix(Gate::u(x(6 * k), x(6 * k + 1), x(6 * k + 2))),
                                          gate_matrix(Gate::u(x(6 * k + 3), x(6 * k + 4), x(6 * k + 5))));
      w = local * w;
      if (k < cnots) w = cx * w;
    }
    return w;
  };
  // Smooth surrogate of the distance: 1 - |tr|^2 / 16.
  auto objective = [&](const Eigen::VectorXd& x) {
    return 1.0 - std::norm((target_adj * build(x)).trace()) / 16.0;
  };

  const Box box = Box::periodic_cube(n, kTwoPi);
  MinimizeOptions mopt;
  mopt.target = 0.5 * options.tol;

  SynthesisReport report;
  report.cnot_count = cnots;
  for (int r = 0; r < options.restarts; ++r) {
    CounterRng rng(CounterRng::derive(options.seed, static_cast<std::uint64_t>(r)));
    Eigen::VectorXd x0(n);
    for (int i = 0; i < n; ++i) x0(i) = kTwoPi * rng.uniform();
    const MinimizeResult m = minimize_bfgs(objective, x0, box, mopt);
    report.iterations += m.iterations;
    report.restarts_used = r + 1;
    const double d = circuit_distance(build(m.x), target);
    if (d < report.residual) {
      report.residual = d;
      report.parameters.assign(m.x.data(), m.x.data() + n);
    }
    if (report.residual < options.tol) break;
  }
  report.circuit = cnot_template(cnots, report.parameters);
  report.verified = report.residual < options.tol;
  return report;
}

inline SynthesisReport fit_three_cnot(const Eigen::Matrix4cd& target, const FitOptions& options = {}) {
  return fit_cnot_template(target, 3, options);
}

// Circuit for the embedded coin operator at theta with as few CNOTs as the
// realness test allows: the transcribed circuit where one exists, a fitted
// two-CNOT template when the test passes, otherwise the three-CNOT template.
inline SynthesisReport synthesize(double theta, const FitOptions& options = {}) {
  const Eigen::Matrix4cd target = x_theta_two_qubit(theta);
  const bool feasible = two_cnot_feasible(target);
  const double t = reduce_angle(theta);
  SynthesisReport report;
  if (std::abs(t - 2 * kPi / 3) < 1e-9 || std::abs(t - 4 * kPi / 3) < 1e-9) {
    report.circuit = fixed_two_cnot_circuit(t);
    const ConventionMatch match = match_convention(report.circuit, target);
    report.cnot_count = 2;
    report.residual = match.residual;
    report.verified = match.matched;
    report.convention = match.convention.name();
  } else {
    if (feasible) report = fit_cnot_template(target, 2, options);
    if (!report.verified) report = fit_cnot_template(target, 3, options);
  }
  report.theta = theta;
  report.two_cnot_feasible = feasible;
  return report;
}

inline std::string format_angle(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One gate per line: kind, qubits, angles (radians).
inline std::string to_netlist(const CircuitTemplate& circuit) {
  std::ostringstream os;
  for (const auto& layer : circuit.layers) {
    if (const auto* c = std::get_if<CnotLayer>(&layer)) {
      os << "CNOT " << c->control << ' ' << c->target << '\n';
      continue;
    }
    const auto& l = std::get<LocalLayer>(layer);
    const std::array<const Gate*, 2> gates{&l.q0, &l.q1};
    for (int q = 0; q < 2; ++q) {
      const Gate& g = *gates[q];
      switch (g.kind) {
        case GateKind::kU:
          os << "U " << q << ' ' << format_angle(g.angles[0]) << ' ' << format_angle(g.angles[1])
             << ' ' << format_angle(g.angles[2]) << '\n';
          break;
        case GateKind::kRx: os << "RX " << q << ' ' << format_angle(g.angles[0]) << '\n'; break;
        case GateKind::kRz: os << "RZ " << q << ' ' << format_angle(g.angles[0]) << '\n'; break;
        case GateKind::kId: break;
      }
    }
  }
  return os.str();
}

// Haar-distributed unitary from the QR decomposition of a complex Gaussian
// matrix with the phases of R's diagonal divided out.
inline Eigen::MatrixXcd random_unitary(int dim, std::uint64_t seed) {
  CounterRng rng(seed);
  Eigen::MatrixXcd z(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(rng.normal(), rng.normal());
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

}  // namespace qmorra
