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

#include "bellopt/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace bellopt {

void CampaignConfig::validate() const {
  ancilla.validate();
  if (modes < 4 + ancilla.modes()) throw std::invalid_argument("modes must be at least 4 + ancilla modes");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  optimizer.validate();
}

RunRecord campaign_run(const EvaluationPlan& plan, const CampaignConfig& config, std::uint64_t index) {
  const std::uint64_t seed = derived_seed(config.seed, index);
  std::mt19937_64 rng(seed);
  const UnitaryMatrix start = haar_unitary(config.modes, rng);
  OptimizerConfig opt = config.optimizer;
  // Runs already share the cores; nested teams would only oversubscribe.
  if (config.parallelism > 1) opt.execution = Execution::Serial;
  RunRecord record = local_optimize(plan, start, opt);
  record.run_index = index;
  record.seed = seed;
  return record;
}

namespace {

std::int64_t bin_of(double p) { return std::llround(p * 1e6); }

}  // namespace

CampaignSummary summarize(const AncillaSpec& ancilla, int modes, std::uint64_t seed, std::vector<RunRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.run_index < b.run_index; });
  CampaignSummary s;
  s.ancilla = ancilla;
  s.modes = modes;
  s.seed = seed;
  s.runs = records.size();
  std::map<std::int64_t, std::uint64_t, std::greater<>> bins;
  std::map<std::array<std::int64_t, 4>, std::pair<double, std::uint64_t>> shapes;
  for (const RunRecord& r : records) {
    if (!r.converged) continue;
    ++s.converged_runs;
    ++bins[bin_of(r.p_succ)];
    const auto sorted = r.pattern.sorted();
    std::array<std::int64_t, 4> key;
    for (int i = 0; i < 4; ++i) key[i] = bin_of(sorted[i]);
    auto& slot = shapes[key];
    slot.first = r.p_succ;
    ++slot.second;
    if (!s.best_run || r.p_succ > s.best_p_succ) {
      s.best_run = r.run_index;
      s.best_p_succ = r.p_succ;
      s.best_f = r.f;
      s.best_pattern = sorted;
    }
  }
  for (const auto& [bin, count] : bins) s.histogram.push_back({static_cast<double>(bin) * 1e-6, count});
  for (const auto& [key, slot] : shapes) {
    PatternCount pc;
    for (int i = 0; i < 4; ++i) pc.sorted[i] = static_cast<double>(key[i]) * 1e-6;
    pc.p_succ = static_cast<double>(bin_of(slot.first)) * 1e-6;
    pc.count = slot.second;
    s.patterns.push_back(pc);
  }
  std::stable_sort(s.patterns.begin(), s.patterns.end(), [](const PatternCount& a, const PatternCount& b) {
    if (a.p_succ != b.p_succ) return a.p_succ > b.p_succ;
    return a.sorted > b.sorted;
  });
  return s;
}

CampaignSummary run_campaign(const EvaluationPlan& plan, const CampaignConfig& config,
                             const std::vector<RunRecord>& previous, const RecordSink& sink) {
  config.validate();
  if (static_cast<int>(plan.modes()) != config.modes)
    throw std::invalid_argument("campaign: plan mode count does not match the configuration");
  const auto t0 = std::chrono::steady_clock::now();

  std::set<std::uint64_t> done;
  std::vector<RunRecord> records;
  for (const RunRecord& r : previous) {
    if (r.run_index < config.runs && done.insert(r.run_index).second) records.push_back(r);
  }
  std::vector<std::uint64_t> pending;
  for (std::uint64_t i = 0; i < config.runs; ++i) {
    if (!done.count(i)) pending.push_back(i);
  }

  std::mutex lock;
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(pending.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(config.parallelism) if (config.parallelism > 1)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      RunRecord record = campaign_run(plan, config, pending[static_cast<std::size_t>(i)]);
      std::lock_guard<std::mutex> guard(lock);
      if (sink) sink(record);
      records.push_back(std::move(record));
    } catch (...) {
      std::lock_guard<std::mutex> guard(lock);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  CampaignSummary summary = summarize(config.ancilla, config.modes, config.seed, std::move(records));
  summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return summary;
}

}  // namespace bellopt
