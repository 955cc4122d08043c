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

// Serial reference against the OpenMP kernels, and the compiled plan against
// direct polynomial expansion.

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "bellopt/compiler.hpp"
#include "bellopt/evolve.hpp"
#include "bellopt/optimizer.hpp"

namespace {

using namespace bellopt;

struct Case {
  AncillaSpec spec;
  int modes;
};

const Case& case_for(int index) {
  static const Case cases[] = {{AncillaSpec::vacuum(), 4},
                               {AncillaSpec::single_photons(2), 6},
                               {AncillaSpec::bell_pairs(1), 8},
                               {AncillaSpec::single_photons(4), 8}};
  return cases[index];
}

const EvaluationPlan& plan_for(int index) {
  static std::map<int, EvaluationPlan> plans;
  auto it = plans.find(index);
  if (it == plans.end()) it = plans.emplace(index, compile(case_for(index).spec, case_for(index).modes)).first;
  return it->second;
}

UnitaryMatrix start(int modes) {
  std::mt19937_64 rng(5);
  return haar_unitary(modes, rng);
}

void label(benchmark::State& state, int index) {
  state.SetLabel(case_for(index).spec.label() + " n=" + std::to_string(case_for(index).modes));
}

void BM_Evaluate(benchmark::State& state, Execution exec) {
  const int index = static_cast<int>(state.range(0));
  const EvaluationPlan& plan = plan_for(index);
  const UnitaryMatrix u = start(static_cast<int>(plan.modes()));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(plan, u, exec));
  label(state, index);
}

void BM_Gradient(benchmark::State& state, Execution exec) {
  const int index = static_cast<int>(state.range(0));
  const EvaluationPlan& plan = plan_for(index);
  const UnitaryMatrix u = start(static_cast<int>(plan.modes()));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_gradient(plan, u, exec));
  label(state, index);
}

void BM_DirectExpansion(benchmark::State& state) {
  const int index = static_cast<int>(state.range(0));
  const Case& c = case_for(index);
  const UnitaryMatrix u = start(c.modes);
  const auto events = enumerate_events(c.modes, c.spec.photons() + 2);
  std::vector<Polynomial> inputs;
  for (BellState b : kBellStates) inputs.push_back(input_polynomial(b, c.spec, static_cast<std::size_t>(c.modes)));
  for (auto _ : state) {
    double total = 0.0;
    for (const Polynomial& p : inputs) {
      const Polynomial out = substitute(p, u);
      for (const Occupation& e : events) total += std::norm(out.coefficient(e)) * factorial_product(e);
    }
    benchmark::DoNotOptimize(total);
  }
  label(state, index);
}

BENCHMARK_CAPTURE(BM_Evaluate, serial, Execution::Serial)->DenseRange(0, 3);
BENCHMARK_CAPTURE(BM_Evaluate, parallel, Execution::Parallel)->DenseRange(0, 3);
BENCHMARK_CAPTURE(BM_Gradient, serial, Execution::Serial)->DenseRange(0, 3);
BENCHMARK_CAPTURE(BM_Gradient, parallel, Execution::Parallel)->DenseRange(0, 3);
BENCHMARK(BM_DirectExpansion)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
