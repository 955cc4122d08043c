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

#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "bellopt/compiler.hpp"
#include "bellopt/objective.hpp"

namespace bellopt {

enum class Parameterization {
  /// 2n^2 real entries with n^2 row-orthonormality equality constraints,
  /// analytic gradient and Jacobian.
  Constrained,
  /// U = U0 exp(iH) over n^2 Hermitian parameters, BFGS with forward
  /// finite-difference gradients.
  Exponential,
};

struct OptimizerConfig {
  int max_iterations = 1000;
  double f_tolerance = 1e-10;
  double constraint_tolerance = 1e-9;
  double eps_zero = 1e-9;
  Parameterization parameterization = Parameterization::Constrained;
  /// Evaluation policy for the probability table inside one optimization.
  Execution execution = Execution::Parallel;

  void validate() const;
};

struct RunRecord {
  std::uint64_t run_index = 0;
  std::uint64_t seed = 0;
  std::string start_hash;
  UnitaryMatrix final_u;
  double f = 0.0;
  double p_succ = 0.0;
  DiscriminationPattern pattern;
  int iterations = 0;
  bool converged = false;
  /// max |U^dag U - I| of the optimizer's final iterate, before polishing.
  double constraint_violation = 0.0;
  double wall_seconds = 0.0;
  std::string message;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) moved into Q.
UnitaryMatrix haar_unitary(int n, std::mt19937_64& rng);

/// i-th output of a SplitMix64 stream started at `master`.
std::uint64_t derived_seed(std::uint64_t master, std::uint64_t index);

/// FNV-1a over the raw entries, as 16 hex digits.
std::string unitary_hash(const UnitaryMatrix& u);

/// Row-orthonormality constraints of x = [Re u_00, Im u_00, Re u_01, ...]:
/// |row_i|^2 - 1 for each i, then Re and Im of <row_i, row_j> for i < j.
void orthonormality_constraints(const Eigen::VectorXd& x, std::size_t n, Eigen::VectorXd& values,
                                Eigen::MatrixXd& jacobian);

Eigen::VectorXd flatten(const UnitaryMatrix& u);
UnitaryMatrix unflatten(const Eigen::VectorXd& x, std::size_t n);

/// Figure of merit of U and its dense gradient.
double merit_and_gradient(const EvaluationPlan& plan, const UnitaryMatrix& u, std::vector<double>& gradient,
                          Execution exec);

/// Local minimum of the figure of merit from `start`. The final matrix is
/// replaced by its nearest unitary and P_succ and the pattern are recomputed
/// from it; `converged` requires the optimizer's own stopping test and a
/// constraint violation within tolerance.
RunRecord local_optimize(const EvaluationPlan& plan, const UnitaryMatrix& start, const OptimizerConfig& config);

}  // namespace bellopt
