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

#include <gtest/gtest.h>

#include <set>

#include "bellopt/objective.hpp"
#include "support.hpp"

namespace bellopt {
namespace {

using testing::direct_probability;
using testing::random_unitary;

// Partitions by brute force: all non-increasing sequences, no recursion
// shared with the library.
std::uint64_t brute_partitions(int total) {
  if (total == 0) return 1;
  std::set<std::vector<int>> seen;
  for (const Occupation& e : enumerate_events(total, total)) {
    std::vector<int> parts;
    for (int c : e.counts()) {
      if (c) parts.push_back(c);
    }
    std::sort(parts.rbegin(), parts.rend());
    seen.insert(parts);
  }
  return seen.size();
}

TEST(CanonicalClass, SwapsMiddleColumns) {
  const auto [cls, sigma] = canonical_class({1, 0, 1, 0});
  EXPECT_EQ(cls.partition, (std::vector<int>{1, 1}));
  EXPECT_EQ(cls.representative, (Occupation{1, 1, 0, 0}));
  EXPECT_EQ(sigma, (std::vector<int>{0, 2, 1, 3}));
}

TEST(CanonicalClass, MovesPairToFront) {
  const auto [cls, sigma] = canonical_class({0, 0, 0, 2});
  EXPECT_EQ(cls.partition, (std::vector<int>{2}));
  EXPECT_EQ(cls.representative, (Occupation{2, 0, 0, 0}));
  EXPECT_EQ(sigma[0], 3);
}

TEST(CanonicalClass, SigmaMapsRepresentativeToEvent) {
  for (const Occupation& e : enumerate_events(6, 4)) {
    const auto [cls, sigma] = canonical_class(e);
    for (std::size_t c = 0; c < e.modes(); ++c) EXPECT_EQ(cls.representative[c], e[static_cast<std::size_t>(sigma[c])]);
    EXPECT_TRUE(std::is_sorted(cls.partition.rbegin(), cls.partition.rend()));
  }
}

TEST(Partitions, CountsMatchBruteForce) {
  const auto counts = partition_counts(14);
  for (int m = 0; m <= 10; ++m) EXPECT_EQ(counts[m], brute_partitions(m)) << m;
  for (int m = 0; m <= 14; ++m) EXPECT_EQ(integer_partitions(m, m).size(), counts[m]) << m;
  EXPECT_EQ(counts[4], 5u);
  EXPECT_EQ(counts[14], 135u);
}

TEST(Partitions, BoundedParts) {
  EXPECT_EQ(integer_partitions(4, 2).size(), 3u);  // 4, 3+1, 2+2
  EXPECT_EQ(integer_partitions(4, 4).front(), (std::vector<int>{4}));
}

TEST(Compile, ClassCounts) {
  EXPECT_EQ(compile(AncillaSpec::vacuum(), 4).classes().size(), 2u);
  EXPECT_EQ(compile(AncillaSpec::bell_pairs(1), 8).classes().size(), 5u);
  EXPECT_EQ(compile(AncillaSpec::single_photons(2), 6).classes().size(), 5u);
  EXPECT_EQ(compile(AncillaSpec::single_photons(1), 5).classes().size(), 3u);
  EXPECT_THROW(compile(AncillaSpec::bell_pairs(1), 7), std::invalid_argument);
}

TEST(Compile, IdentityHasNoOneOneEvent) {
  const EvaluationPlan plan = compile(AncillaSpec::vacuum(), 4);
  const auto amps = evaluate_amplitudes(plan, UnitaryMatrix::Identity(4, 4));
  const auto& events = *plan.events();
  const auto it = std::find(events.begin(), events.end(), Occupation{1, 1, 0, 0});
  ASSERT_NE(it, events.end());
  EXPECT_EQ(amps[static_cast<std::size_t>(it - events.begin())], Complex(0.0));
}

TEST(Compile, ResourceCeiling) {
  CompileOptions opts;
  opts.node_ceiling = 50;
  EXPECT_THROW(compile(AncillaSpec::bell_pairs(1), 8, opts), ResourceLimitExceeded);
}

TEST(Compile, SmallerThanNaiveExpansion) {
  const EvaluationPlan plan = compile(AncillaSpec::bell_pairs(1), 8);
  const std::uint64_t naive = naive_operation_count(AncillaSpec::bell_pairs(1), 8);
  EXPECT_LT(plan.statistics().value_arithmetic, naive);
  EXPECT_LT(plan.statistics().dag_nodes, naive);
}

TEST(Compile, Deterministic) {
  const EvaluationPlan a = compile(AncillaSpec::single_photons(2), 6);
  const EvaluationPlan b = compile(AncillaSpec::single_photons(2), 6);
  ASSERT_EQ(a.tapes().size(), b.tapes().size());
  for (std::size_t t = 0; t < a.tapes().size(); ++t) {
    ASSERT_EQ(a.tapes()[t].code.size(), b.tapes()[t].code.size());
    for (std::size_t i = 0; i < a.tapes()[t].code.size(); ++i) {
      EXPECT_EQ(a.tapes()[t].code[i].op, b.tapes()[t].code[i].op);
      EXPECT_EQ(a.tapes()[t].code[i].lhs, b.tapes()[t].code[i].lhs);
      EXPECT_EQ(a.tapes()[t].code[i].rhs, b.tapes()[t].code[i].rhs);
    }
  }
}

TEST(BellTransforms, RowMaps) {
  EXPECT_EQ(bell_transform(BellState::PhiPlus).source, (std::array<int, 4>{0, 1, 2, 3}));
  EXPECT_EQ(bell_transform(BellState::PhiMinus).sign, (std::array<double, 4>{1, -1, 1, 1}));
  EXPECT_EQ(bell_transform(BellState::PsiPlus).source, (std::array<int, 4>{0, 1, 3, 2}));
  EXPECT_EQ(bell_transform(BellState::PsiMinus).source, (std::array<int, 4>{0, 1, 3, 2}));
  EXPECT_EQ(bell_transform(BellState::PsiMinus).sign, (std::array<double, 4>{1, -1, 1, 1}));
}

struct Case {
  AncillaSpec spec;
  int modes;
};

class PlanSoundness : public ::testing::TestWithParam<int> {};

std::vector<Case> soundness_cases() {
  return {{AncillaSpec::vacuum(), 4},        {AncillaSpec::vacuum(), 6},         {AncillaSpec::single_photons(1), 5},
          {AncillaSpec::single_photons(2), 6}, {AncillaSpec::bell_pairs(1), 8}, {AncillaSpec::single_photons(3), 7}};
}

TEST_P(PlanSoundness, MatchesDirectExpansion) {
  const Case c = soundness_cases()[static_cast<std::size_t>(GetParam())];
  const EvaluationPlan plan = compile(c.spec, c.modes);
  const auto& events = *plan.events();
  for (int s = 0; s < 3; ++s) {
    const UnitaryMatrix u = random_unitary(c.modes, 50 + s);
    const ProbabilityTable t = evaluate(plan, u);
    for (BellState b : kBellStates) {
      for (std::size_t e = 0; e < events.size(); ++e)
        ASSERT_NEAR(t(b, e), direct_probability(u, b, c.spec, events[e]), 1e-12)
            << c.spec.label() << " " << bell_name(b) << " " << events[e].to_string();
    }
  }
}

TEST_P(PlanSoundness, RowsSumToOne) {
  const Case c = soundness_cases()[static_cast<std::size_t>(GetParam())];
  const EvaluationPlan plan = compile(c.spec, c.modes);
  const ProbabilityTable t = evaluate(plan, random_unitary(c.modes, 4));
  for (BellState b : kBellStates) EXPECT_NEAR(t.row_sum(b), 1.0, 1e-10);
}

TEST_P(PlanSoundness, SerialEqualsParallelBitwise) {
  const Case c = soundness_cases()[static_cast<std::size_t>(GetParam())];
  const EvaluationPlan plan = compile(c.spec, c.modes);
  const UnitaryMatrix u = random_unitary(c.modes, 8);
  EXPECT_EQ(evaluate(plan, u, Execution::Serial).values, evaluate(plan, u, Execution::Parallel).values);
  const auto gs = evaluate_gradient(plan, u, Execution::Serial);
  const auto gp = evaluate_gradient(plan, u, Execution::Parallel);
  EXPECT_EQ(gs.gradient.d_re, gp.gradient.d_re);
  EXPECT_EQ(gs.gradient.d_im, gp.gradient.d_im);
  EXPECT_EQ(gs.gradient.entry, gp.gradient.entry);
}

INSTANTIATE_TEST_SUITE_P(Cases, PlanSoundness, ::testing::Range(0, 6));

TEST(Cse, DisabledGivesSameValues) {
  CompileOptions off;
  off.cse = false;
  const EvaluationPlan a = compile(AncillaSpec::bell_pairs(1), 8);
  const EvaluationPlan b = compile(AncillaSpec::bell_pairs(1), 8, off);
  EXPECT_GT(b.statistics().dag_nodes, a.statistics().dag_nodes);
  const UnitaryMatrix u = random_unitary(8, 17);
  EXPECT_EQ(evaluate(a, u).values, evaluate(b, u).values);
  const auto ga = evaluate_gradient(a, u);
  const auto gb = evaluate_gradient(b, u);
  for (std::size_t row = 0; row < 4 * a.events()->size(); ++row) {
    const auto da = ga.gradient.dense_row(row), db = gb.gradient.dense_row(row);
    for (std::size_t i = 0; i < da.size(); ++i) ASSERT_NEAR(da[i], db[i], 1e-12);
  }
}

void check_gradient(const AncillaSpec& spec, int modes, std::uint64_t seed) {
  const EvaluationPlan plan = compile(spec, modes);
  const UnitaryMatrix u = random_unitary(modes, seed);
  const TableWithGradient tg = evaluate_gradient(plan, u);
  EXPECT_EQ(tg.table.values, evaluate(plan, u).values);
  const double h = 1e-6;
  const std::size_t rows = tg.table.values.size();
  std::vector<std::vector<double>> fd(rows, std::vector<double>(2 * modes * modes));
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) {
      for (int part = 0; part < 2; ++part) {
        const Complex step = part ? Complex(0, h) : Complex(h, 0);
        UnitaryMatrix up = u, um = u;
        up(i, j) += step;
        um(i, j) -= step;
        const auto pp = evaluate(plan, up).values, pm = evaluate(plan, um).values;
        for (std::size_t r = 0; r < rows; ++r) fd[r][2 * (i * modes + j) + part] = (pp[r] - pm[r]) / (2 * h);
      }
    }
  }
  for (std::size_t r = 0; r < rows; ++r) {
    const auto g = tg.gradient.dense_row(r);
    for (std::size_t k = 0; k < g.size(); ++k)
      ASSERT_NEAR(g[k], fd[r][k], 1e-5 * std::max(1.0, std::abs(fd[r][k]))) << spec.label() << " row " << r;
  }
}

TEST(Gradient, FiniteDifferencesVacuum) { check_gradient(AncillaSpec::vacuum(), 4, 1); }
TEST(Gradient, FiniteDifferencesTwoPhotons) { check_gradient(AncillaSpec::single_photons(2), 6, 2); }
TEST(Gradient, FiniteDifferencesBellPair) { check_gradient(AncillaSpec::bell_pairs(1), 8, 3); }

TEST(Gradient, UninvolvedRowsAreZero) {
  // Rows 5 and 6 carry vacuum: no probability depends on them.
  const EvaluationPlan plan = compile(AncillaSpec::single_photons(1), 7);
  const auto tg = evaluate_gradient(plan, random_unitary(7, 5));
  for (std::size_t r = 0; r < tg.table.values.size(); ++r) {
    const auto g = tg.gradient.dense_row(r);
    for (int i = 5; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        EXPECT_EQ(g[2 * (i * 7 + j)], 0.0);
        EXPECT_EQ(g[2 * (i * 7 + j) + 1], 0.0);
      }
    }
  }
}

TEST(Gradient, OrthogonalToGlobalPhase) {
  // d/dt p(e^{it} U) = 0 at t = 0, and that derivative is
  // sum_ij (-Im u_ij) dp/dRe u_ij + (Re u_ij) dp/dIm u_ij.
  const EvaluationPlan plan = compile(AncillaSpec::single_photons(2), 6);
  const UnitaryMatrix u = random_unitary(6, 21);
  const auto tg = evaluate_gradient(plan, u);
  for (std::size_t r = 0; r < tg.table.values.size(); ++r) {
    const auto g = tg.gradient.dense_row(r);
    double d = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j)
        d += -u(i, j).imag() * g[2 * (i * 6 + j)] + u(i, j).real() * g[2 * (i * 6 + j) + 1];
    }
    EXPECT_NEAR(d, 0.0, 1e-12);
  }
}

TEST(Evaluate, DimensionMismatch) {
  const EvaluationPlan plan = compile(AncillaSpec::vacuum(), 4);
  EXPECT_THROW(evaluate(plan, random_unitary(5, 1)), std::invalid_argument);
  EXPECT_THROW(evaluate_gradient(plan, random_unitary(3, 1)), std::invalid_argument);
}

}  // namespace
}  // namespace bellopt
