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

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bellopt/table.hpp"

namespace bellopt {

/// Per-Bell-state discrimination probabilities, ordered (Phi+, Phi-, Psi+, Psi-).
struct DiscriminationPattern {
  std::array<double, 4> values{};

  double mean() const { return (values[0] + values[1] + values[2] + values[3]) / 4.0; }
  /// Descending order, the form used to compare schemes.
  std::array<double, 4> sorted() const;
};

/// Index of the single Bell input with p > eps_zero at event e, if exactly
/// one exists.
std::optional<BellState> discriminated_state(const ProbabilityTable& table, std::size_t e);

/// 1/4 sum of p over discriminating (event, state) pairs.
double success_probability(const ProbabilityTable& table);

/// sum_e (sum_beta p_beta^e - 2 max_alpha p_alpha^e). No thresholding.
double figure_of_merit(const ProbabilityTable& table);

/// Gradient of the figure of merit, dense [Re u_00, Im u_00, Re u_01, ...].
/// At ties the first maximizing Bell state is used.
std::vector<double> figure_of_merit_gradient(const ProbabilityTable& table, const TableGradient& gradient);

DiscriminationPattern pattern(const ProbabilityTable& table);

/// Clamps entries in [-1e-14, 0) to zero.
void clamp_roundoff(ProbabilityTable& table);

struct Fraction {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
};

/// Nearest p/q with q <= max_denominator, if within `tolerance`. Display only.
std::optional<Fraction> snap_rational(double value, std::int64_t max_denominator = 64, double tolerance = 1e-7);

}  // namespace bellopt
