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

// Small dense quasi-Newton minimizer with central-difference gradients, for
// the handful of angles fitted in circuit synthesis and waveplate matching.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>

#include <Eigen/Dense>

namespace qmorra {

// Box domain. Periodic boxes wrap coordinates into [lower, upper); otherwise
// coordinates are clamped.
struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  bool periodic = false;

  static Box periodic_cube(Eigen::Index n, double period) {
    return Box{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Constant(n, period), true};
  }

  Eigen::VectorXd apply(Eigen::VectorXd x) const {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (periodic) {
        const double w = upper(i) - lower(i);
        double v = std::fmod(x(i) - lower(i), w);
        if (v < 0.0) v += w;
        if (v >= w) v = 0.0;
        x(i) = lower(i) + v;
      } else {
        x(i) = std::clamp(x(i), lower(i), upper(i));
      }
    }
    return x;
  }
};

struct MinimizeOptions {
  int max_iterations = 1000;
  double gradient_step = 1e-6;
  double gradient_tol = 1e-13;
  // stop once the objective drops to this value
  double target = -std::numeric_limits<double>::infinity();
  int stall_iterations = 8;
};

struct MinimizeResult {
  Eigen::VectorXd x;
  double value = std::numeric_limits<double>::infinity();
  int iterations = 0;
  long evaluations = 0;
};

namespace detail {

template <typename Fn>
Eigen::VectorXd central_gradient(Fn& f, const Eigen::VectorXd& x, const std::optional<Box>& box,
                                 double h, long& evals) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    double step = 2.0 * h;
    if (box && !box->periodic) {
      xp(i) = std::min(xp(i), box->upper(i));
      xm(i) = std::max(xm(i), box->lower(i));
      step = xp(i) - xm(i);
    } else if (box) {
      xp = box->apply(xp);
      xm = box->apply(xm);
    }
    g(i) = (f(xp) - f(xm)) / step;
    evals += 2;
  }
  return g;
}

}  // namespace detail

// BFGS on the inverse Hessian with Armijo backtracking. Steps are mapped back
// into the box; the curvature pair uses the unwrapped step so periodic
// domains stay consistent.
template <typename Fn>
MinimizeResult minimize_bfgs(Fn&& f, Eigen::VectorXd x0, const std::optional<Box>& box = std::nullopt,
                             const MinimizeOptions& opt = {}) {
  const Eigen::Index n = x0.size();
  MinimizeResult res;
  Eigen::VectorXd x = box ? box->apply(std::move(x0)) : std::move(x0);
  double fx = f(x);
  res.evaluations = 1;
  Eigen::VectorXd g = detail::central_gradient(f, x, box, opt.gradient_step, res.evaluations);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  int stalled = 0;

  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    if (fx <= opt.target || g.lpNorm<Eigen::Infinity>() < opt.gradient_tol) break;

    Eigen::VectorXd p = -h_inv * g;
    double slope = g.dot(p);
    if (!(slope < 0.0)) {
      h_inv.setIdentity();
      p = -g;
      slope = -g.squaredNorm();
    }

    double t = 1.0;
    Eigen::VectorXd x_new;
    double f_new = fx;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      Eigen::VectorXd trial = x + t * p;
      if (box) trial = box->apply(std::move(trial));
      const double ft = f(trial);
      ++res.evaluations;
      if (ft <= fx + 1e-4 * t * slope) {
        x_new = std::move(trial);
        f_new = ft;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (h_inv.isIdentity()) break;
      h_inv.setIdentity();
      continue;
    }

    Eigen::VectorXd s = t * p;
    if (box && !box->periodic) s = x_new - x;
    const Eigen::VectorXd g_new =
        detail::central_gradient(f, x_new, box, opt.gradient_step, res.evaluations);
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-18 * s.norm() * y.norm() && sy > 0.0) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      h_inv = (eye - rho * s * y.transpose()) * h_inv * (eye - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }

    stalled = (fx - f_new <= 1e-15 * std::max(1.0, std::abs(fx))) ? stalled + 1 : 0;
    x = std::move(x_new);
    fx = f_new;
    g = g_new;
    if (stalled >= opt.stall_iterations) break;
  }
  res.x = std::move(x);
  res.value = fx;
  return res;
}

}  // namespace qmorra
