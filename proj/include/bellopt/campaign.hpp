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

// Multistart campaigns: many independent local optimizations from Haar
// starts, with per-run seeds derived from one master seed.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bellopt/optimizer.hpp"

namespace bellopt {

struct CampaignConfig {
  AncillaSpec ancilla;
  int modes = 4;
  std::uint64_t runs = 100;
  std::uint64_t seed = 1;
  int parallelism = 1;
  OptimizerConfig optimizer;
  /// Base path; records go to <output>.jsonl and the summary to
  /// <output>.summary.json. Empty means no files.
  std::string output;

  void validate() const;
};

struct HistogramBin {
  double value = 0.0;  // bin centre, multiple of 1e-6
  std::uint64_t count = 0;
};

struct PatternCount {
  std::array<double, 4> sorted{};  // rounded to 1e-6
  double p_succ = 0.0;
  std::uint64_t count = 0;
};

struct CampaignSummary {
  AncillaSpec ancilla;
  int modes = 0;
  std::uint64_t runs = 0;
  std::uint64_t converged_runs = 0;
  std::uint64_t seed = 0;
  /// P_succ of converged runs, 1e-6 bins, descending.
  std::vector<HistogramBin> histogram;
  /// Distinct sorted patterns of converged runs, by descending P_succ.
  std::vector<PatternCount> patterns;
  std::optional<std::uint64_t> best_run;
  double best_p_succ = 0.0;
  double best_f = 0.0;
  std::array<double, 4> best_pattern{};
  /// Timing, kept apart from the deterministic fields.
  double wall_seconds = 0.0;
};

/// Called once per finished run, serialized by the campaign.
using RecordSink = std::function<void(const RunRecord&)>;

/// Runs `config.runs` local optimizations. Runs whose index appears in
/// `previous` are not repeated; their records enter the summary as they are.
/// Results depend only on the master seed, never on `parallelism`.
CampaignSummary run_campaign(const EvaluationPlan& plan, const CampaignConfig& config,
                             const std::vector<RunRecord>& previous = {}, const RecordSink& sink = {});

/// One run of a campaign, reproducible on its own.
RunRecord campaign_run(const EvaluationPlan& plan, const CampaignConfig& config, std::uint64_t index);

CampaignSummary summarize(const AncillaSpec& ancilla, int modes, std::uint64_t seed, std::vector<RunRecord> records);

}  // namespace bellopt
