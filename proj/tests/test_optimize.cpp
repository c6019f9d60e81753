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

#include "qmorra/optimize.hpp"
#include "qmorra/parallel.hpp"

namespace qmorra {
namespace {

TEST(Bfgs, Rosenbrock) {
  auto f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1 - x(0), 2);
  };
  const MinimizeResult r = minimize_bfgs(f, Eigen::Vector2d(-1.2, 1.0));
  EXPECT_NEAR(r.x(0), 1.0, 1e-5);
  EXPECT_NEAR(r.x(1), 1.0, 1e-5);
  EXPECT_LT(r.value, 1e-10);
}

TEST(Bfgs, ClampedBoxStopsOnBoundary) {
  auto f = [](const Eigen::VectorXd& x) { return std::pow(x(0) - 3.0, 2) + std::pow(x(1) + 1.0, 2); };
  const Box box{Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(2.0, 2.0), false};
  const MinimizeResult r = minimize_bfgs(f, Eigen::Vector2d(1.0, 1.0), box);
  EXPECT_NEAR(r.x(0), 2.0, 1e-6);
  EXPECT_NEAR(r.x(1), 0.0, 1e-6);
}

TEST(Bfgs, PeriodicBoxWraps) {
  // minimum at 0 == 2pi; start near the upper edge
  auto f = [](const Eigen::VectorXd& x) { return 1.0 - std::cos(x(0)); };
  const MinimizeResult r = minimize_bfgs(f, Eigen::VectorXd::Constant(1, 6.0), Box::periodic_cube(1, 2 * M_PI));
  EXPECT_LT(r.value, 1e-12);
  EXPECT_GE(r.x(0), 0.0);
  EXPECT_LT(r.x(0), 2 * M_PI);
}

TEST(Bfgs, StopsAtTarget) {
  auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  MinimizeOptions opt;
  opt.target = 0.5;
  const MinimizeResult r = minimize_bfgs(f, Eigen::Vector3d(3, 3, 3), std::nullopt, opt);
  EXPECT_LE(r.value, 0.5);
}

TEST(Box, Apply) {
  const Box p = Box::periodic_cube(2, 1.0);
  const Eigen::VectorXd w = p.apply(Eigen::Vector2d(1.25, -0.25));
  EXPECT_NEAR(w(0), 0.25, 1e-15);
  EXPECT_NEAR(w(1), 0.75, 1e-15);
}

TEST(ParallelMap, OrderedAndRethrows) {
  const auto out = parallel_map(100, [](std::size_t i) { return static_cast<int>(i * i); }, 4);
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<int>(i * i));
  EXPECT_THROW(parallel_map(10, [](std::size_t i) -> int {
                 if (i == 7) throw std::runtime_error("boom");
                 return 0;
               }, 3),
               std::runtime_error);
}

}  // namespace
}  // namespace qmorra
