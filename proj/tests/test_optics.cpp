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


#include <cmath>

#include <gtest/gtest.h>

#include "qmorra/errors.hpp"
#include "qmorra/optics.hpp"
#include "qmorra/rng.hpp"

namespace qmorra {
namespace {

constexpr double kTight = 1e-12;
const double kH = 1.0 / std::sqrt(2.0);

TEST(Hwp, KnownAngles) {
  const Eigen::Matrix2d z = hwp_jones(0.0);
  EXPECT_NEAR(z(0, 0), 1.0, kTight);
  EXPECT_NEAR(z(1, 1), -1.0, kTight);
  const Eigen::Matrix2d q = hwp_jones(kPi / 4);
  EXPECT_NEAR(q(0, 1), 1.0, kTight);
  EXPECT_NEAR(q(0, 0), 0.0, kTight);
  const Eigen::Matrix2d e = hwp_jones(kPi / 8);
  EXPECT_NEAR(e(0, 0), kH, kTight);
  EXPECT_NEAR(e(1, 1), -kH, kTight);
}

TEST(Hwp, ReflectionWithPeriodPi) {
  CounterRng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double a = kTwoPi * rng.uniform();
    const Eigen::Matrix2d m = hwp_jones(a);
    EXPECT_LE((m * m.transpose() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), kTight);
    EXPECT_NEAR(m.determinant(), -1.0, kTight);
    EXPECT_LE((hwp_jones(a + kPi) - m).cwiseAbs().maxCoeff(), kTight);
  }
}

TEST(Setup, KnownConfigurations) {
  const TwoQubitState bell = simulate_setup({kPi / 8, 0, 0});
  EXPECT_NEAR(std::abs(bell(1)), kH, kTight);
  EXPECT_NEAR(std::abs(bell(2)), kH, kTight);
  EXPECT_NEAR(entanglement_entropy(bell), 1.0, kTight);

  const TwoQubitState product = simulate_setup({0, 0, 0});
  EXPECT_NEAR(std::abs(product(1)), 1.0, kTight);
  EXPECT_NEAR(entanglement_entropy(product), 0.0, kTight);

  const TwoQubitState swapped = simulate_setup({kPi / 8, kPi / 4, kPi / 4});
  EXPECT_NEAR(swapped(1).real(), kH, kTight);
  EXPECT_NEAR(swapped(2).real(), kH, kTight);
}

TEST(Setup, AlwaysNormalized) {
  CounterRng rng(2);
  for (int i = 0; i < 200; ++i) {
    const WaveplateConfig c{kPi * rng.uniform(), kPi * rng.uniform(), kPi * rng.uniform()};
    EXPECT_NEAR(simulate_setup(c).norm(), 1.0, kTight);
  }
}

TEST(Setup, PumpAngleSweepsEntropyMonotonically) {
  double last = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = entanglement_entropy(simulate_setup({kPi / 8 * i / 100, 0, 0}));
    EXPECT_GE(s, last - kTight);
    last = s;
  }
  EXPECT_NEAR(last, 1.0, kTight);
  EXPECT_NEAR(entanglement_entropy(simulate_setup({0, 0, 0})), 0.0, kTight);
  // past pi/8 the weights swap roles and entropy falls back to 0 at pi/4
  EXPECT_NEAR(entanglement_entropy(simulate_setup({kPi / 4, 0, 0})), 0.0, 1e-9);
}

TEST(Hellinger, Values) {
  EXPECT_NEAR(hellinger_fidelity({0.1, 0.2, 0.3, 0.4}, {0.1, 0.2, 0.3, 0.4}), 1.0, kTight);
  EXPECT_NEAR(hellinger_fidelity({1, 0, 0, 0}, {0, 1, 0, 0}), 0.0, kTight);
  EXPECT_NEAR(hellinger_fidelity({0.5, 0.5, 0, 0}, {0.25, 0.75, 0, 0}),
              std::sqrt(1.0 / 8) + std::sqrt(3.0 / 8), kTight);
  EXPECT_NEAR(hellinger_fidelity({0.5, 0.5, 0, 0}, {0.25, 0.75, 0, 0}),
              hellinger_fidelity({0.25, 0.75, 0, 0}, {0.5, 0.5, 0, 0}), kTight);
}

TEST(Cost, ExactClassicalMatch) {
  EXPECT_LT(fit_cost({kPi / 8, 0, 0}, 2 * kPi / 3, 1).cost, 1e-12);
}

TEST(Cost, MismatchBranch) {
  // target |00>; plates produce |11>
  const CostComponents c = fit_cost({0, kPi / 4, 0}, 0.0, 1);
  EXPECT_NEAR(c.cost, 1.0, kTight);
  EXPECT_NEAR(c.fidelity, 0.0, kTight);
}

TEST(Cost, DecomposesAndIsPeriodic) {
  CounterRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const WaveplateConfig c{kPi * rng.uniform(), kPi * rng.uniform(), kPi * rng.uniform()};
    const double theta = kTwoPi * rng.uniform();
    const CostComponents a = fit_cost(c, theta, 1);
    EXPECT_NEAR(a.cost, 1.0 - a.fidelity + a.entropy_gap, kTight);
    for (int k = 0; k < 3; ++k) {
      WaveplateConfig shifted = c;
      (k == 0 ? shifted.alpha1 : k == 1 ? shifted.alpha2 : shifted.alpha3) += kPi;
      EXPECT_NEAR(fit_cost(shifted, theta, 1).cost, a.cost, kTight);
    }
  }
}

TEST(Cost, RejectsTargetIndex) {
  EXPECT_THROW(fit_cost({0, 0, 0}, 1.0, 0), ValidationError);
  EXPECT_THROW(fit_cost({0, 0, 0}, 1.0, 3), ValidationError);
}

TEST(Fit, ClassicalTargetIsMaximallyEntangled) {
  const FitResult r = fit_waveplates(2 * kPi / 3, 1);
  EXPECT_TRUE(r.success);
  EXPECT_LT(r.cost, 1e-6);
  EXPECT_NEAR(entanglement_entropy(simulate_setup(r.alpha_opt)), 1.0, 1e-6);
}

TEST(Fit, ProductTarget) {
  const FitResult r = fit_waveplates(0.0, 1);
  EXPECT_LT(r.cost, 1e-6);
  EXPECT_NEAR(entanglement_entropy(simulate_setup(r.alpha_opt)), 0.0, 1e-6);
}

TEST(Fit, WholeGridBothTargets) {
  for (int i = 0; i < 34; ++i) {
    for (int j = 1; j <= 2; ++j) {
      const FitResult r = fit_waveplates(kTwoPi * i / 33, j);
      EXPECT_LT(r.cost, 1e-6) << i << ' ' << j;
      EXPECT_GE(r.fidelity, 1.0 - 1e-6);
      EXPECT_LE(r.entropy_gap, 1e-6);
      EXPECT_GE(r.alpha_opt.alpha1, 0.0);
      EXPECT_LT(r.alpha_opt.alpha1, kPi);
    }
  }
}

TEST(Fit, Deterministic) {
  const FitResult a = fit_waveplates(1.3, 2), b = fit_waveplates(1.3, 2);
  EXPECT_EQ(a.alpha_opt.alpha1, b.alpha_opt.alpha1);
  EXPECT_EQ(a.cost, b.cost);
  WaveplateFitOptions other;
  other.seed = 99;
  EXPECT_LT(fit_waveplates(1.3, 2, other).cost, 1e-6);
}

}  // namespace
}  // namespace qmorra
