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

#include "bellopt/compiler.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <map>
#include <numeric>
#include <unordered_map>

#include "dag.hpp"

namespace bellopt {

std::pair<EventClass, std::vector<int>> canonical_class(const Occupation& e) {
  std::vector<int> sigma(e.modes());
  std::iota(sigma.begin(), sigma.end(), 0);
  std::stable_sort(sigma.begin(), sigma.end(), [&e](int a, int b) { return e[a] > e[b]; });
  EventClass cls;
  std::vector<int> rep(e.modes());
  for (std::size_t c = 0; c < e.modes(); ++c) {
    rep[c] = e[sigma[c]];
    if (rep[c] > 0) cls.partition.push_back(rep[c]);
  }
  cls.representative = Occupation(std::move(rep));
  return {std::move(cls), std::move(sigma)};
}

namespace {

void partitions_into(int remaining, int largest, int parts_left, std::vector<int>& current,
                     std::vector<std::vector<int>>& out) {
  if (remaining == 0) {
    out.push_back(current);
    return;
  }
  if (parts_left == 0) return;
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    current.push_back(part);
    partitions_into(remaining - part, part, parts_left - 1, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> integer_partitions(int total, int max_parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  if (total < 0 || max_parts < 0) return out;
  partitions_into(total, total, max_parts, current, out);
  return out;
}

std::vector<std::uint64_t> partition_counts(int max) {
  std::vector<std::uint64_t> p(static_cast<std::size_t>(max) + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= max; ++m) {
    std::int64_t total = 0;
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2;
      const int g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const std::int64_t sign = (k % 2 == 1) ? 1 : -1;
      total += sign * static_cast<std::int64_t>(p[m - g1]);
      if (g2 <= m) total += sign * static_cast<std::int64_t>(p[m - g2]);
    }
    p[m] = static_cast<std::uint64_t>(total);
  }
  return p;
}

BellTransform bell_transform(BellState beta) {
  BellTransform t;
  switch (beta) {
    case BellState::PhiPlus: break;
    case BellState::PhiMinus: t.sign[1] = -1; break;
    case BellState::PsiPlus: t.source = {0, 1, 3, 2}; break;
    case BellState::PsiMinus:
      t.source = {0, 1, 3, 2};
      t.sign[1] = -1;
      break;
  }
  return t;
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

// Mixed-radix index of partial occupations bounded by the representative.
struct OccupationGrid {
  std::vector<int> limit;
  std::vector<std::size_t> stride;
  std::size_t size = 1;

  explicit OccupationGrid(const std::vector<int>& parts) : limit(parts), stride(parts.size()) {
    for (std::size_t c = 0; c < parts.size(); ++c) {
      stride[c] = size;
      size *= static_cast<std::size_t>(parts[c] + 1);
    }
  }
  int digit(std::size_t index, std::size_t c) const {
    return static_cast<int>((index / stride[c]) % static_cast<std::size_t>(limit[c] + 1));
  }
  std::size_t full() const { return size - 1; }
};

using StateVector = std::vector<std::uint32_t>;

// Multiply every partial state by the linear form sum_c u_{row, c} x_c,
// dropping states that overshoot the representative.
StateVector multiply_row(DagBuilder& dag, const OccupationGrid& grid, const StateVector& states, std::uint32_t row) {
  StateVector next(grid.size, kNone);
  for (std::size_t idx = 0; idx < grid.size; ++idx) {
    if (states[idx] == kNone) continue;
    for (std::size_t c = 0; c < grid.limit.size(); ++c) {
      if (grid.digit(idx, c) >= grid.limit[c]) continue;
      const std::size_t target = idx + grid.stride[c];
      const std::uint32_t term = dag.mul(states[idx], dag.input(row, static_cast<std::uint32_t>(c)));
      next[target] = next[target] == kNone ? term : dag.add(next[target], term);
    }
  }
  return next;
}

StateVector run_monomial(DagBuilder& dag, const OccupationGrid& grid, StateVector states, const Occupation& monomial,
                         std::uint32_t row_offset) {
  for (std::size_t i = 0; i < monomial.modes(); ++i) {
    for (int copy = 0; copy < monomial[i]; ++copy)
      states = multiply_row(dag, grid, states, row_offset + static_cast<std::uint32_t>(i));
  }
  return states;
}

// Sum of coefficient * node with equal coefficients grouped before the
// multiplication.
std::uint32_t linear_combination(DagBuilder& dag, const std::vector<std::pair<Complex, std::uint32_t>>& terms) {
  std::vector<std::pair<Complex, std::uint32_t>> groups;
  for (const auto& [c, node] : terms) {
    if (node == kNone) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&c](const auto& g) { return g.first == c; });
    if (it == groups.end()) {
      groups.emplace_back(c, node);
    } else {
      it->second = dag.add(it->second, node);
    }
  }
  std::uint32_t out = kNone;
  for (const auto& [c, node] : groups) {
    const std::uint32_t term = dag.mul(dag.constant(c), node);
    out = out == kNone ? term : dag.add(out, term);
  }
  return out;
}

// Phi+ amplitude coefficient of the representative `parts`. The ancilla
// factor is expanded first and its partial states are summed over ancilla
// terms, so the Bell factor is applied once per Bell term rather than once
// per product term.
std::uint32_t build_amplitude(DagBuilder& dag, const std::vector<int>& parts, const Polynomial& bell,
                              const Polynomial& ancilla) {
  const OccupationGrid grid(parts);
  StateVector start(grid.size, kNone);
  start[0] = dag.constant(1.0);

  std::vector<StateVector> per_term;
  std::vector<Complex> coefficients;
  for (const auto& [q, cq] : ancilla.terms()) {
    per_term.push_back(run_monomial(dag, grid, start, q, 4));
    coefficients.push_back(cq);
  }
  StateVector combined(grid.size, kNone);
  for (std::size_t idx = 0; idx < grid.size; ++idx) {
    std::vector<std::pair<Complex, std::uint32_t>> terms;
    for (std::size_t t = 0; t < per_term.size(); ++t) terms.emplace_back(coefficients[t], per_term[t][idx]);
    combined[idx] = linear_combination(dag, terms);
  }

  std::vector<std::pair<Complex, std::uint32_t>> bell_terms;
  for (const auto& [b, cb] : bell.terms()) {
    const StateVector out = run_monomial(dag, grid, combined, b, 0);
    bell_terms.emplace_back(cb, out[grid.full()]);
  }
  const std::uint32_t g = linear_combination(dag, bell_terms);
  return g == kNone ? dag.constant(0.0) : g;
}

std::vector<char> cone_of(const DagBuilder& dag, const std::vector<std::uint32_t>& roots) {
  std::vector<char> mark(dag.size(), 0);
  std::uint32_t top = 0;
  for (std::uint32_t r : roots) {
    mark[r] = 1;
    top = std::max(top, r);
  }
  for (std::int64_t id = top; id >= 0; --id) {
    if (!mark[id]) continue;
    const DagNode& node = dag.node(static_cast<std::uint32_t>(id));
    if (node.op == OpCode::Add || node.op == OpCode::Mul) {
      mark[node.a] = 1;
      mark[node.b] = 1;
    } else if (node.op == OpCode::Neg) {
      mark[node.a] = 1;
    }
  }
  return mark;
}

struct RawDerivative {
  std::uint32_t row, column, node;
};

// Reverse-mode adjoint program of `root`, emitted into the same DAG.
std::vector<RawDerivative> build_adjoint(DagBuilder& dag, std::uint32_t root) {
  const std::vector<char> cone = cone_of(dag, {root});
  std::vector<std::uint32_t> adjoint(cone.size(), kNone);
  auto accumulate = [&](std::uint32_t target, std::uint32_t value) {
    adjoint[target] = adjoint[target] == kNone ? value : dag.add(adjoint[target], value);
  };
  adjoint[root] = dag.constant(1.0);
  std::vector<RawDerivative> out;
  for (std::int64_t id = root; id >= 0; --id) {
    if (!cone[id] || adjoint[id] == kNone) continue;
    const DagNode node = dag.node(static_cast<std::uint32_t>(id));
    const std::uint32_t adj = adjoint[id];
    switch (node.op) {
      case OpCode::Add:
        accumulate(node.a, adj);
        accumulate(node.b, adj);
        break;
      case OpCode::Mul:
        accumulate(node.a, dag.mul(adj, node.b));
        accumulate(node.b, dag.mul(adj, node.a));
        break;
      case OpCode::Neg:
        accumulate(node.a, dag.neg(adj));
        break;
      case OpCode::Input:
        out.push_back({node.a, node.b, adj});
        break;
      case OpCode::Constant:
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const RawDerivative& x, const RawDerivative& y) {
    return std::tie(x.row, x.column) < std::tie(y.row, y.column);
  });
  return out;
}

Tape extract_tape(const DagBuilder& dag, std::uint32_t value, const std::vector<RawDerivative>& derivatives,
                  std::uint32_t columns) {
  const std::vector<char> value_cone = cone_of(dag, {value});
  std::vector<std::uint32_t> roots;
  for (const auto& d : derivatives) roots.push_back(d.node);
  roots.push_back(value);
  const std::vector<char> full_cone = cone_of(dag, roots);

  Tape tape;
  tape.columns = columns;
  std::vector<std::uint32_t> local(dag.size(), kNone);
  std::unordered_map<std::uint32_t, std::uint32_t> local_constant;
  auto emit = [&](std::uint32_t id) {
    const DagNode& node = dag.node(id);
    Instruction ins{node.op, node.a, node.b};
    switch (node.op) {
      case OpCode::Constant: {
        auto [it, inserted] = local_constant.try_emplace(node.a, static_cast<std::uint32_t>(tape.constants.size()));
        if (inserted) tape.constants.push_back(dag.constant_value(node.a));
        ins.lhs = it->second;
        ins.rhs = 0;
        break;
      }
      case OpCode::Input: break;
      case OpCode::Neg: ins.lhs = local[node.a]; break;
      case OpCode::Add:
      case OpCode::Mul:
        ins.lhs = local[node.a];
        ins.rhs = local[node.b];
        break;
    }
    local[id] = static_cast<std::uint32_t>(tape.code.size());
    tape.code.push_back(ins);
  };
  for (std::uint32_t id = 0; id < dag.size(); ++id) {
    if (value_cone[id]) emit(id);
  }
  tape.value_length = static_cast<std::uint32_t>(tape.code.size());
  for (std::uint32_t id = 0; id < dag.size(); ++id) {
    if (full_cone[id] && !value_cone[id]) emit(id);
  }
  tape.value = local[value];
  for (const auto& d : derivatives) tape.derivatives.push_back({d.row, d.column, local[d.node]});
  return tape;
}

std::size_t arithmetic_count(const Tape& tape, std::size_t begin, std::size_t end) {
  std::size_t count = 0;
  for (std::size_t r = begin; r < end; ++r) {
    const OpCode op = tape.code[r].op;
    count += (op == OpCode::Add || op == OpCode::Mul || op == OpCode::Neg) ? 1 : 0;
  }
  return count;
}

}  // namespace

EvaluationPlan EvaluationPlan::assemble(AncillaSpec ancilla, std::size_t modes, std::vector<EventClass> classes,
                                        std::vector<Tape> tapes, std::size_t dag_nodes) {
  EvaluationPlan plan;
  plan.modes_ = modes;
  plan.photons_ = ancilla.photons() + 2;
  plan.ancilla_ = std::move(ancilla);
  plan.classes_ = std::move(classes);
  plan.tapes_ = std::move(tapes);
  if (plan.classes_.size() != plan.tapes_.size()) throw std::invalid_argument("plan: class and tape counts differ");

  std::map<std::vector<int>, std::uint32_t> class_index;
  for (std::size_t r = 0; r < plan.classes_.size(); ++r)
    class_index[plan.classes_[r].partition] = static_cast<std::uint32_t>(r);

  auto events = std::make_shared<std::vector<Occupation>>(enumerate_events(static_cast<int>(modes), plan.photons_));
  plan.event_class_.reserve(events->size());
  for (const Occupation& e : *events) {
    auto [cls, sigma] = canonical_class(e);
    auto it = class_index.find(cls.partition);
    if (it == class_index.end()) throw std::invalid_argument("plan: event class missing from plan");
    plan.event_class_.push_back(it->second);
    sigma.resize(cls.partition.size());
    plan.event_columns_.push_back(std::move(sigma));
    plan.event_norm_.push_back(monomial_normalization(e));
  }
  plan.events_ = std::move(events);

  plan.stats_.dag_nodes = dag_nodes;
  for (const Tape& t : plan.tapes_) {
    plan.stats_.value_instructions += t.value_length;
    plan.stats_.gradient_instructions += t.code.size() - t.value_length;
    plan.stats_.value_arithmetic += arithmetic_count(t, 0, t.value_length);
    plan.stats_.gradient_arithmetic += arithmetic_count(t, t.value_length, t.code.size());
  }
  return plan;
}

EvaluationPlan compile(const AncillaSpec& spec, int modes, const CompileOptions& options) {
  spec.validate();
  if (modes < 4 + spec.modes())
    throw std::invalid_argument("compile: " + std::to_string(modes) + " modes cannot hold " + spec.label());
  const int photons = spec.photons() + 2;
  const Polynomial bell = bell_polynomial(BellState::PhiPlus);
  const Polynomial ancilla = ancilla_polynomial(spec);

  DagBuilder dag(options.cse, options.node_ceiling);
  std::vector<EventClass> classes;
  std::vector<std::uint32_t> values;
  for (const auto& parts : integer_partitions(photons, modes)) {
    std::vector<int> rep(static_cast<std::size_t>(modes), 0);
    std::copy(parts.begin(), parts.end(), rep.begin());
    classes.push_back({parts, Occupation(rep)});
    values.push_back(build_amplitude(dag, parts, bell, ancilla));
  }
  std::vector<std::vector<RawDerivative>> derivatives;
  for (std::uint32_t v : values) derivatives.push_back(build_adjoint(dag, v));

  std::vector<Tape> tapes;
  for (std::size_t r = 0; r < classes.size(); ++r)
    tapes.push_back(extract_tape(dag, values[r], derivatives[r], static_cast<std::uint32_t>(classes[r].partition.size())));
  return EvaluationPlan::assemble(spec, static_cast<std::size_t>(modes), std::move(classes), std::move(tapes),
                                  dag.size());
}

namespace {

// Number of non-negative integer matrices with the given row and column sums.
class ContingencyCounter {
 public:
  explicit ContingencyCounter(std::vector<int> rows) : rows_(std::move(rows)) {}

  std::uint64_t count(const std::vector<int>& columns) { return count_from(0, columns); }

 private:
  std::uint64_t count_from(std::size_t row, const std::vector<int>& columns) {
    if (row == rows_.size()) {
      return std::all_of(columns.begin(), columns.end(), [](int c) { return c == 0; }) ? 1 : 0;
    }
    auto key = std::make_pair(row, columns);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<int> remaining = columns;
    const std::uint64_t total = distribute(row, 0, rows_[row], remaining);
    memo_.emplace(std::move(key), total);
    return total;
  }

  std::uint64_t distribute(std::size_t row, std::size_t column, int left, std::vector<int>& remaining) {
    if (column == remaining.size()) return left == 0 ? count_from(row + 1, remaining) : 0;
    std::uint64_t total = 0;
    const int available = remaining[column];
    for (int take = 0; take <= std::min(left, available); ++take) {
      remaining[column] = available - take;
      total += distribute(row, column + 1, left - take, remaining);
    }
    remaining[column] = available;
    return total;
  }

  std::vector<int> rows_;
  std::map<std::pair<std::size_t, std::vector<int>>, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t naive_operation_count(const AncillaSpec& spec, int modes) {
  const Polynomial input = input_polynomial(BellState::PhiPlus, spec, static_cast<std::size_t>(modes));
  const int photons = spec.photons() + 2;
  std::uint64_t total = 0;
  for (const auto& [monomial, c] : input.terms()) {
    std::vector<int> rows;
    for (int m : monomial.counts()) {
      if (m > 0) rows.push_back(m);
    }
    ContingencyCounter counter(rows);
    for (const Occupation& e : enumerate_events(modes, photons)) {
      std::vector<int> columns;
      for (int x : e.counts()) {
        if (x > 0) columns.push_back(x);
      }
      total += counter.count(columns) * static_cast<std::uint64_t>(photons + 1);
    }
  }
  return 4 * total;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Cx {
  double re, im;
};

struct RowMap {
  std::array<std::vector<int>, 4> source;
  std::array<std::vector<double>, 4> sign;
};

RowMap make_row_map(std::size_t modes) {
  RowMap map;
  for (BellState beta : kBellStates) {
    const BellTransform t = bell_transform(beta);
    auto& src = map.source[static_cast<int>(beta)];
    auto& sgn = map.sign[static_cast<int>(beta)];
    src.resize(modes);
    sgn.assign(modes, 1.0);
    std::iota(src.begin(), src.end(), 0);
    for (int i = 0; i < 4; ++i) {
      src[i] = t.source[i];
      sgn[i] = t.sign[i];
    }
  }
  return map;
}

// Runs registers [0, length) of `tape`, reading entry (row, c) of the
// transformed matrix as sign[row] * U(source[row], columns[c]).
void run_tape(const Tape& tape, std::size_t length, const UnitaryMatrix& u, const int* source, const double* sign,
              const int* columns, Cx* reg) {
  const Instruction* code = tape.code.data();
  for (std::size_t r = 0; r < length; ++r) {
    const Instruction& ins = code[r];
    switch (ins.op) {
      case OpCode::Input: {
        const Complex v = u(source[ins.lhs], columns[ins.rhs]);
        const double s = sign[ins.lhs];
        reg[r] = {s * v.real(), s * v.imag()};
        break;
      }
      case OpCode::Constant: {
        const Complex& c = tape.constants[ins.lhs];
        reg[r] = {c.real(), c.imag()};
        break;
      }
      case OpCode::Add: {
        const Cx a = reg[ins.lhs], b = reg[ins.rhs];
        reg[r] = {a.re + b.re, a.im + b.im};
        break;
      }
      case OpCode::Mul: {
        const Cx a = reg[ins.lhs], b = reg[ins.rhs];
        reg[r] = {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
        break;
      }
      case OpCode::Neg: {
        const Cx a = reg[ins.lhs];
        reg[r] = {-a.re, -a.im};
        break;
      }
    }
  }
}

std::size_t max_tape_length(const EvaluationPlan& plan) {
  std::size_t out = 1;
  for (const Tape& t : plan.tapes()) out = std::max(out, t.code.size());
  return out;
}

void check_dimensions(const EvaluationPlan& plan, const UnitaryMatrix& u) {
  if (static_cast<std::size_t>(u.rows()) != plan.modes() || u.cols() != u.rows())
    throw std::invalid_argument("evaluate: matrix dimension does not match the plan");
}

}  // namespace

std::vector<Complex> evaluate_amplitudes(const EvaluationPlan& plan, const UnitaryMatrix& u, Execution exec) {
  check_dimensions(plan, u);
  const std::size_t events = plan.events()->size();
  const RowMap rows = make_row_map(plan.modes());
  const std::size_t scratch = max_tape_length(plan);
  std::vector<Complex> out(4 * events);
  const auto count = static_cast<std::int64_t>(events);
#pragma omp parallel if (exec == Execution::Parallel)
  {
    std::vector<Cx> reg(scratch);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t e = 0; e < count; ++e) {
      const Tape& tape = plan.tapes()[plan.event_class(e)];
      const int* columns = plan.event_columns(e).data();
      const double norm = plan.event_normalization(e);
      for (int b = 0; b < 4; ++b) {
        run_tape(tape, tape.value_length, u, rows.source[b].data(), rows.sign[b].data(), columns, reg.data());
        const Cx g = reg[tape.value];
        out[b * events + e] = Complex(g.re * norm, g.im * norm);
      }
    }
  }
  return out;
}

ProbabilityTable evaluate(const EvaluationPlan& plan, const UnitaryMatrix& u, Execution exec) {
  const std::vector<Complex> amps = evaluate_amplitudes(plan, u, exec);
  ProbabilityTable table;
  table.events = plan.events();
  table.values.resize(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) table.values[i] = std::norm(amps[i]);
  return table;
}

TableWithGradient evaluate_gradient(const EvaluationPlan& plan, const UnitaryMatrix& u, Execution exec) {
  check_dimensions(plan, u);
  const std::size_t n = plan.modes();
  const std::size_t events = plan.events()->size();
  const RowMap rows = make_row_map(n);
  const std::size_t scratch = max_tape_length(plan);

  TableWithGradient out;
  out.table.events = plan.events();
  out.table.values.resize(4 * events);
  TableGradient& grad = out.gradient;
  grad.modes = n;
  grad.offsets.resize(4 * events + 1);
  grad.offsets[0] = 0;
  for (std::size_t b = 0; b < 4; ++b) {
    for (std::size_t e = 0; e < events; ++e) {
      const std::size_t row = b * events + e;
      grad.offsets[row + 1] =
          grad.offsets[row] + static_cast<std::uint32_t>(plan.tapes()[plan.event_class(e)].derivatives.size());
    }
  }
  grad.entry.resize(grad.offsets.back());
  grad.d_re.resize(grad.offsets.back());
  grad.d_im.resize(grad.offsets.back());

  const auto count = static_cast<std::int64_t>(events);
#pragma omp parallel if (exec == Execution::Parallel)
  {
    std::vector<Cx> reg(scratch);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t e = 0; e < count; ++e) {
      const Tape& tape = plan.tapes()[plan.event_class(e)];
      const int* columns = plan.event_columns(e).data();
      const double norm = plan.event_normalization(e);
      for (int b = 0; b < 4; ++b) {
        const int* source = rows.source[b].data();
        const double* sign = rows.sign[b].data();
        run_tape(tape, tape.code.size(), u, source, sign, columns, reg.data());
        const Cx g = reg[tape.value];
        const double are = g.re * norm, aim = g.im * norm;
        const std::size_t row = b * events + e;
        out.table.values[row] = are * are + aim * aim;
        std::uint32_t slot = grad.offsets[row];
        for (const Tape::Derivative& d : tape.derivatives) {
          const Cx dg = reg[d.reg];
          const double s = sign[d.row] * norm;
          const double dre = s * dg.re, dim = s * dg.im;
          // conj(a) * da
          const double pr = are * dre + aim * dim;
          const double pi = are * dim - aim * dre;
          grad.entry[slot] = static_cast<std::uint32_t>(source[d.row]) * static_cast<std::uint32_t>(n) +
                             static_cast<std::uint32_t>(columns[d.column]);
          grad.d_re[slot] = 2.0 * pr;
          grad.d_im[slot] = -2.0 * pi;
          ++slot;
        }
      }
    }
  }
  return out;
}

double ProbabilityTable::row_sum(BellState beta) const {
  double total = 0.0;
  for (std::size_t e = 0; e < event_count(); ++e) total += (*this)(beta, e);
  return total;
}

std::vector<double> TableGradient::dense_row(std::size_t row) const {
  std::vector<double> out(2 * modes * modes, 0.0);
  for (std::uint32_t k = offsets[row]; k < offsets[row + 1]; ++k) {
    out[2 * entry[k]] += d_re[k];
    out[2 * entry[k] + 1] += d_im[k];
  }
  return out;
}

}  // namespace bellopt
