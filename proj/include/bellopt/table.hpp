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
#include <memory>
#include <vector>

#include "bellopt/fock.hpp"

namespace bellopt {

/// p_beta^e for the four Bell inputs over a shared event list.
struct ProbabilityTable {
  std::shared_ptr<const std::vector<Occupation>> events;
  /// Row-major: values[beta * event_count() + e].
  std::vector<double> values;
  /// Probabilities at or below this are treated as zero when classifying
  /// discriminating events.
  double eps_zero = 1e-9;

  std::size_t event_count() const { return events ? events->size() : values.size() / 4; }
  double operator()(BellState beta, std::size_t e) const {
    return values[static_cast<std::size_t>(beta) * event_count() + e];
  }
  double& at(BellState beta, std::size_t e) { return values[static_cast<std::size_t>(beta) * event_count() + e]; }
  double row_sum(BellState beta) const;
};

/// Derivatives of every p_beta^e with respect to Re u_ij and Im u_ij, stored
/// as sparse rows over the entries the probability depends on. Entry index is
/// i * n + j.
struct TableGradient {
  std::size_t modes = 0;
  /// offsets[beta * N + e] .. offsets[beta * N + e + 1] delimit row (beta, e).
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> entry;
  std::vector<double> d_re;
  std::vector<double> d_im;

  /// Dense gradient of row (beta, e), layout [Re u_00, Im u_00, Re u_01, ...].
  std::vector<double> dense_row(std::size_t row) const;
};

}  // namespace bellopt
