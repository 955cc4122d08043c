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

#include "bellopt/objective.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bellopt {

std::array<double, 4> DiscriminationPattern::sorted() const {
  std::array<double, 4> out = values;
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::optional<BellState> discriminated_state(const ProbabilityTable& table, std::size_t e) {
  std::optional<BellState> found;
  for (BellState beta : kBellStates) {
    if (table(beta, e) > table.eps_zero) {
      if (found) return std::nullopt;
      found = beta;
    }
  }
  return found;
}

DiscriminationPattern pattern(const ProbabilityTable& table) {
  DiscriminationPattern out;
  for (std::size_t e = 0; e < table.event_count(); ++e) {
    if (auto beta = discriminated_state(table, e)) out.values[static_cast<int>(*beta)] += table(*beta, e);
  }
  return out;
}

double success_probability(const ProbabilityTable& table) { return pattern(table).mean(); }

double figure_of_merit(const ProbabilityTable& table) {
  double f = 0.0;
  for (std::size_t e = 0; e < table.event_count(); ++e) {
    double sum = 0.0, best = 0.0;
    for (BellState beta : kBellStates) {
      const double p = table(beta, e);
      sum += p;
      best = std::max(best, p);
    }
    f += sum - 2.0 * best;
  }
  return f;
}

std::vector<double> figure_of_merit_gradient(const ProbabilityTable& table, const TableGradient& gradient) {
  const std::size_t events = table.event_count();
  std::vector<double> out(2 * gradient.modes * gradient.modes, 0.0);
  for (std::size_t e = 0; e < events; ++e) {
    int best = 0;
    for (int b = 1; b < 4; ++b) {
      if (table.values[b * events + e] > table.values[best * events + e]) best = b;
    }
    for (int b = 0; b < 4; ++b) {
      const double weight = b == best ? -1.0 : 1.0;
      const std::size_t row = b * events + e;
      for (std::uint32_t k = gradient.offsets[row]; k < gradient.offsets[row + 1]; ++k) {
        out[2 * gradient.entry[k]] += weight * gradient.d_re[k];
        out[2 * gradient.entry[k] + 1] += weight * gradient.d_im[k];
      }
    }
  }
  return out;
}

void clamp_roundoff(ProbabilityTable& table) {
  for (double& p : table.values) {
    if (p < 0.0 && p >= -1e-14) p = 0.0;
  }
}

std::optional<Fraction> snap_rational(double value, std::int64_t max_denominator, double tolerance) {
  std::optional<Fraction> best;
  double best_error = tolerance;
  for (std::int64_t q = 1; q <= max_denominator; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(value * static_cast<double>(q)));
    const double error = std::abs(value - static_cast<double>(p) / static_cast<double>(q));
    if (error <= best_error && (!best || error < best_error)) {
      best = Fraction{p, q};
      best_error = error;
    }
  }
  if (best) {
    std::int64_t a = std::abs(best->numerator), b = best->denominator;
    while (b) {
      a %= b;
      std::swap(a, b);
    }
    if (a > 1) {
      best->numerator /= a;
      best->denominator /= a;
    }
  }
  return best;
}

}  // namespace bellopt
