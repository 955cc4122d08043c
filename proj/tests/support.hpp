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

#include <cmath>
#include <numbers>
#include <random>

#include "bellopt/compiler.hpp"
#include "bellopt/optimizer.hpp"

namespace bellopt::testing {

inline UnitaryMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(n, rng);
}

/// Hand-built vacuum scheme: 50:50 beamsplitters between the H rails (0, 2)
/// and the V rails (1, 3) of the two qubits.
inline UnitaryMatrix braunstein_mann(int n = 4) {
  const double q = std::numbers::pi / 4;
  return circuit_to_unitary({CircuitElement::beamsplitter(0, 2, q), CircuitElement::beamsplitter(1, 3, q)}, n);
}

/// |amplitude|^2 by direct expansion, the reference for the compiled plan.
inline double direct_probability(const UnitaryMatrix& u, BellState beta, const AncillaSpec& spec,
                                 const Occupation& e) {
  return std::norm(amplitude(u, input_polynomial(beta, spec, static_cast<std::size_t>(u.rows())), e));
}

}  // namespace bellopt::testing
