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

// Equality-constrained sequential quadratic programming with a damped BFGS
// approximation of the Lagrangian Hessian and an L1 merit line search.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace bellopt {

struct SqpProblem {
  /// Returns f(x) and writes its gradient.
  std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& gradient)> objective;
  /// Writes c(x) and its Jacobian (constraints x variables).
  std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& values, Eigen::MatrixXd& jacobian)> constraints;
};

struct SqpOptions {
  int max_iterations = 1000;
  /// Stop when the accepted step changes f by less than this (relative to
  /// max(1, |f|)) while constraints hold.
  double f_tolerance = 1e-10;
  double constraint_tolerance = 1e-9;
  /// Cap on the infinity norm of a search direction; 0 disables it.
  double max_step = 0.5;
};

struct SqpResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double violation = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

SqpResult sqp_minimize(const SqpProblem& problem, Eigen::VectorXd x0, const SqpOptions& options);

}  // namespace bellopt
