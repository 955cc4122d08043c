// Copyright 2026 The bellopt Authors
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

#include "bellopt/sqp.hpp"

#include <algorithm>
#include <cmath>

namespace bellopt {

namespace {

struct Point {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd g;
  Eigen::VectorXd c;
  Eigen::MatrixXd jac;
};

double merit(const Point& p, const Eigen::VectorXd& penalty) { return p.f + penalty.dot(p.c.cwiseAbs()); }

// Solves [B J^T; J 0] [d; lambda] = [-g; -c].
bool solve_kkt(const Eigen::MatrixXd& b, const Point& p, Eigen::VectorXd& d, Eigen::VectorXd& lambda) {
  const Eigen::Index nv = p.x.size(), nc = p.c.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(nv + nc, nv + nc);
  k.topLeftCorner(nv, nv) = b;
  k.topRightCorner(nv, nc) = p.jac.transpose();
  k.bottomLeftCorner(nc, nv) = p.jac;
  Eigen::VectorXd rhs(nv + nc);
  rhs.head(nv) = -p.g;
  rhs.tail(nc) = -p.c;
  Eigen::VectorXd sol = k.partialPivLu().solve(rhs);
  if (!sol.allFinite() || ((k * sol - rhs).lpNorm<Eigen::Infinity>() > 1e-6 * (1.0 + rhs.lpNorm<Eigen::Infinity>()))) {
    sol = k.fullPivLu().solve(rhs);
    if (!sol.allFinite()) return false;
  }
  d = sol.head(nv);
  lambda = sol.tail(nc);
  return true;
}

}  // namespace

SqpResult sqp_minimize(const SqpProblem& problem, Eigen::VectorXd x0, const SqpOptions& options) {
  SqpResult result;
  auto evaluate = [&](Point& p) {
    p.f = problem.objective(p.x, p.g);
    problem.constraints(p.x, p.c, p.jac);
    ++result.evaluations;
  };

  Point cur;
  cur.x = std::move(x0);
  evaluate(cur);
  const Eigen::Index nv = cur.x.size();
  Eigen::MatrixXd hessian = Eigen::MatrixXd::Identity(nv, nv);
  Eigen::VectorXd penalty = Eigen::VectorXd::Zero(cur.c.size());
  Eigen::VectorXd d, lambda;
  Point trial;

  for (int it = 1; it <= options.max_iterations; ++it) {
    result.iterations = it;
    if (!solve_kkt(hessian, cur, d, lambda)) {
      hessian.setIdentity();
      if (!solve_kkt(hessian, cur, d, lambda)) {
        result.message = "singular KKT system";
        break;
      }
    }
    for (Eigen::Index i = 0; i < penalty.size(); ++i) {
      const double l = std::abs(lambda[i]);
      penalty[i] = std::max(l, 0.5 * (penalty[i] + l));
    }
    const double phi = merit(cur, penalty);
    double slope = cur.g.dot(d) - penalty.dot(cur.c.cwiseAbs());
    if (slope >= 0.0 && d.lpNorm<Eigen::Infinity>() > 0.0) {
      // Quasi-Newton model lost descent: restart from the identity.
      hessian.setIdentity();
      if (!solve_kkt(hessian, cur, d, lambda)) {
        result.message = "singular KKT system";
        break;
      }
      slope = cur.g.dot(d) - penalty.dot(cur.c.cwiseAbs());
    }

    const double length = d.lpNorm<Eigen::Infinity>();
    if (options.max_step > 0.0 && length > options.max_step) {
      d *= options.max_step / length;
      slope = cur.g.dot(d) - penalty.dot(cur.c.cwiseAbs()) * (options.max_step / length);
    }

    double alpha = 1.0;
    bool accepted = false;
    bool tried_correction = false;
    while (alpha > 1e-12) {
      trial.x = cur.x + alpha * d;
      evaluate(trial);
      if (merit(trial, penalty) <= phi + 0.1 * alpha * std::min(slope, 0.0)) {
        accepted = true;
        break;
      }
      if (alpha == 1.0 && !tried_correction) {
        // Second-order correction: pull the full step back onto the
        // linearized constraints at the trial point.
        tried_correction = true;
        const Eigen::MatrixXd jjt = cur.jac * cur.jac.transpose();
        const Eigen::VectorXd corr = -cur.jac.transpose() * jjt.ldlt().solve(trial.c);
        Point second;
        second.x = trial.x + corr;
        evaluate(second);
        if (merit(second, penalty) <= phi + 0.1 * std::min(slope, 0.0)) {
          trial = std::move(second);
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      result.message = "line search failed";
      break;
    }

    const Eigen::VectorXd s = trial.x - cur.x;
    Eigen::VectorXd y = (trial.g + trial.jac.transpose() * lambda) - (cur.g + cur.jac.transpose() * lambda);
    const Eigen::VectorXd bs = hessian * s;
    const double sbs = s.dot(bs);
    double sy = s.dot(y);
    if (sbs > 0.0) {
      if (sy < 0.2 * sbs) {
        const double theta = 0.8 * sbs / (sbs - sy);
        y = theta * y + (1.0 - theta) * bs;
        sy = s.dot(y);
      }
      if (sy > 0.0) hessian += (y * y.transpose()) / sy - (bs * bs.transpose()) / sbs;
    }

    const double df = std::abs(trial.f - cur.f);
    const double step = s.lpNorm<Eigen::Infinity>();
    cur = std::move(trial);
    const double violation = cur.c.lpNorm<Eigen::Infinity>();
    if (violation <= options.constraint_tolerance &&
        (df <= options.f_tolerance * std::max(1.0, std::abs(cur.f)) || step <= 1e-14)) {
      result.converged = true;
      result.message = "converged";
      break;
    }
  }
  if (result.message.empty()) result.message = "iteration limit";
  result.x = cur.x;
  result.f = cur.f;
  result.violation = cur.c.size() ? cur.c.lpNorm<Eigen::Infinity>() : 0.0;
  return result;
}

}  // namespace bellopt
