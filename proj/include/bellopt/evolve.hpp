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

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bellopt/fock.hpp"

namespace bellopt {

/// Row i = input mode, column j = output mode: a_i^dag = sum_j u_ij c_j^dag.
using UnitaryMatrix = Eigen::MatrixXcd;

/// max |(U^dag U - I)_ij|.
double unitarity_defect(const UnitaryMatrix& u);

/// Throws std::invalid_argument if `u` is not square or its defect exceeds
/// `tolerance`.
void validate_unitary(const UnitaryMatrix& u, double tolerance = 1e-9);

/// Nearest unitary in Frobenius norm (polar factor).
UnitaryMatrix nearest_unitary(const UnitaryMatrix& u);

/// Replace every input creation operator by its image row of U and collect.
/// Generators are substituted one at a time with collection after each
/// product step.
Polynomial substitute(const Polynomial& input, const UnitaryMatrix& u);

/// Physical amplitude of detection event `event` at the output of U.
/// Throws std::invalid_argument if the photon counts disagree.
Complex amplitude(const UnitaryMatrix& u, const Polynomial& input, const Occupation& event);

/// Same quantity through permanents:
///   sum_m c_m per(U[m, e]) / sqrt(prod_j e_j!).
Complex amplitude_oracle(const UnitaryMatrix& u, const Polynomial& input, const Occupation& event);

/// Ryser's formula with Gray-code updates. Square matrices up to 30x30.
Complex permanent_ryser(const Eigen::MatrixXcd& m);

/// Sum over all permutations; only sensible for small matrices.
Complex permanent_naive(const Eigen::MatrixXcd& m);

/// Matrix with row i of `u` repeated rows[i] times and column j repeated
/// cols[j] times.
Eigen::MatrixXcd repeated_submatrix(const UnitaryMatrix& u, const Occupation& rows, const Occupation& cols);

/// All occupation vectors of length `modes` with `photons` photons, in
/// lexicographic order.
std::vector<Occupation> enumerate_events(int modes, int photons);

std::uint64_t binomial(int n, int k);

struct CircuitElement {
  enum class Kind { BeamSplitter, Phase, Swap };
  Kind kind = Kind::BeamSplitter;
  int first = 0;
  int second = 0;
  /// Rotation angle for beamsplitters, phase for phase shifters.
  double angle = 0.0;

  static CircuitElement beamsplitter(int i, int j, double theta) { return {Kind::BeamSplitter, i, j, theta}; }
  static CircuitElement phase(int i, double phi) { return {Kind::Phase, i, i, phi}; }
  static CircuitElement swap(int i, int j) { return {Kind::Swap, i, j, 0.0}; }
};

using Circuit = std::vector<CircuitElement>;

/// Product of the element unitaries in application order. A beamsplitter is
/// the real rotation [[cos t, -sin t], [sin t, cos t]] on rows (i, j); a phase
/// multiplies row i by exp(i phi). Mode indices are 0-based.
UnitaryMatrix circuit_to_unitary(const Circuit& circuit, int modes);

}  // namespace bellopt
