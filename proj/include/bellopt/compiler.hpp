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

// Compiles the detection amplitudes of a (Bell state + ancilla) input into
// straight-line complex programs of the interferometer entries.
//
// Two symmetries keep the program count at the number of integer partitions
// of the photon number:
//   * events related by a permutation of output modes share one program,
//     evaluated with permuted column indices;
//   * the four Bell inputs differ from Phi+ by a signed permutation of input
//     rows 1..3, applied the same way.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellopt/evolve.hpp"
#include "bellopt/fock.hpp"
#include "bellopt/table.hpp"

namespace bellopt {

/// Partition of the photon number describing events equal up to a
/// permutation of output modes.
struct EventClass {
  std::vector<int> partition;  // non-increasing, positive
  Occupation representative;   // partition left-aligned, zero padded
};

/// Returns the class of `e` and the column map sigma: sigma[c] is the output
/// mode of `e` carried by column c of the representative, so
/// e[sigma[c]] == representative[c]. Ties are broken by mode index.
std::pair<EventClass, std::vector<int>> canonical_class(const Occupation& e);

/// Non-increasing partitions of `total` with at most `max_parts` parts, in
/// reverse lexicographic order ([total] first).
std::vector<std::vector<int>> integer_partitions(int total, int max_parts);

/// Partition counts p(0..max) by Euler's pentagonal recurrence.
std::vector<std::uint64_t> partition_counts(int max);

/// Signed row permutation taking Phi+ to another Bell input: the beta
/// amplitude under U equals the Phi+ amplitude under the matrix whose row i
/// is sign[i] * U.row(source[i]) for i < 4.
struct BellTransform {
  std::array<int, 4> source{0, 1, 2, 3};
  std::array<double, 4> sign{1, 1, 1, 1};
};

BellTransform bell_transform(BellState beta);

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CompileOptions {
  /// Hash-consing of DAG nodes. Disabling it only duplicates nodes; the
  /// arithmetic performed is unchanged.
  bool cse = true;
  /// Maximum number of DAG nodes before compilation is refused.
  std::size_t node_ceiling = 10'000'000;
};

enum class OpCode : std::uint8_t { Input, Constant, Add, Mul, Neg };

/// One register of a tape. Input reads entry (lhs = row, rhs = column of the
/// representative); Constant reads constants[lhs]; other operands are
/// earlier registers.
struct Instruction {
  OpCode op;
  std::uint32_t lhs;
  std::uint32_t rhs;
};

/// Straight-line program for the Phi+ amplitude coefficient of one event
/// class, followed by its reverse-mode derivative section.
struct Tape {
  std::vector<Instruction> code;
  std::vector<Complex> constants;
  /// Registers [0, value_length) compute the value.
  std::uint32_t value_length = 0;
  std::uint32_t value = 0;
  /// (row, column, register) of every nonzero d g / d u_{row, column}.
  struct Derivative {
    std::uint32_t row;
    std::uint32_t column;
    std::uint32_t reg;
  };
  std::vector<Derivative> derivatives;
  std::uint32_t columns = 0;
};

struct PlanStatistics {
  std::size_t dag_nodes = 0;
  std::size_t value_instructions = 0;
  std::size_t gradient_instructions = 0;
  /// Arithmetic (Add, Mul, Neg) counts, Inputs and Constants excluded.
  std::size_t value_arithmetic = 0;
  std::size_t gradient_arithmetic = 0;
};

class EvaluationPlan {
 public:
  std::size_t modes() const { return modes_; }
  int photons() const { return photons_; }
  const AncillaSpec& ancilla() const { return ancilla_; }
  const std::vector<EventClass>& classes() const { return classes_; }
  const std::vector<Tape>& tapes() const { return tapes_; }
  const std::shared_ptr<const std::vector<Occupation>>& events() const { return events_; }
  std::size_t event_class(std::size_t e) const { return event_class_[e]; }
  const std::vector<int>& event_columns(std::size_t e) const { return event_columns_[e]; }
  double event_normalization(std::size_t e) const { return event_norm_[e]; }
  const PlanStatistics& statistics() const { return stats_; }

  /// Rebuilds the event index for given classes and tapes (used by compile
  /// and by the cache loader).
  static EvaluationPlan assemble(AncillaSpec ancilla, std::size_t modes, std::vector<EventClass> classes,
                                 std::vector<Tape> tapes, std::size_t dag_nodes);

 private:
  std::size_t modes_ = 0;
  int photons_ = 0;
  AncillaSpec ancilla_;
  std::vector<EventClass> classes_;
  std::vector<Tape> tapes_;
  std::shared_ptr<const std::vector<Occupation>> events_;
  std::vector<std::uint32_t> event_class_;
  std::vector<std::vector<int>> event_columns_;
  std::vector<double> event_norm_;
  PlanStatistics stats_;
};

/// Throws ResourceLimitExceeded when the DAG grows past the ceiling and
/// std::invalid_argument when `modes` cannot hold the input.
EvaluationPlan compile(const AncillaSpec& spec, int modes, const CompileOptions& options = {});

/// Operation count of the fully expanded per-event polynomials for all 4N
/// (beta, event) pairs: each monomial of degree d costs d multiplications
/// (coefficient included) and one addition.
std::uint64_t naive_operation_count(const AncillaSpec& spec, int modes);

enum class Execution { Serial, Parallel };

/// Full 4 x N table. Parallel execution splits the event loop with OpenMP;
/// the serial path is the reference and gives bit-identical values.
ProbabilityTable evaluate(const EvaluationPlan& plan, const UnitaryMatrix& u, Execution exec = Execution::Parallel);

/// Amplitudes (not squared) in the same layout as ProbabilityTable::values.
std::vector<Complex> evaluate_amplitudes(const EvaluationPlan& plan, const UnitaryMatrix& u,
                                         Execution exec = Execution::Parallel);

struct TableWithGradient {
  ProbabilityTable table;
  TableGradient gradient;
};

/// Table plus the analytic Jacobian, using
///   d|g|^2 / d Re u = 2 Re(conj(g) dg/du),  d|g|^2 / d Im u = -2 Im(conj(g) dg/du).
TableWithGradient evaluate_gradient(const EvaluationPlan& plan, const UnitaryMatrix& u,
                                    Execution exec = Execution::Parallel);

}  // namespace bellopt
