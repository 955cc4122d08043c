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

// JSON formats for ancillae, unitaries, circuits, run records, summaries and
// campaign configurations, plus the binary plan cache.

#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellopt/campaign.hpp"
#include "bellopt/compiler.hpp"

namespace bellopt {

using nlohmann::json;

/// Malformed or inconsistent input document.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json ancilla_to_json(const AncillaSpec& spec);
/// {"family": "bell_pairs", "m": 1}; parameters are "k" (single_photons,
/// ghz), "m" (bell_pairs), "N" (grice, evl) and "terms" (custom).
AncillaSpec ancilla_from_json(const json& j);

json unitary_to_json(const UnitaryMatrix& u);
UnitaryMatrix unitary_from_json(const json& j);

json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

json record_to_json(const RunRecord& r);
RunRecord record_from_json(const json& j);

json summary_to_json(const CampaignSummary& s);
CampaignSummary summary_from_json(const json& j);

json config_to_json(const CampaignConfig& c);
/// Rejects unknown keys at every level.
CampaignConfig config_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

/// A campaign stream: one {"campaign": config} header line, then one record
/// per line.
struct RecordFile {
  std::optional<CampaignConfig> config;
  std::vector<RunRecord> records;
  std::size_t skipped_lines = 0;
};

json campaign_header(const CampaignConfig& c);

/// Reads a campaign stream, skipping lines that do not parse.
RecordFile read_records(const std::filesystem::path& path);

void save_plan(const EvaluationPlan& plan, const std::filesystem::path& path);
/// Loads a cached plan, or nullopt if the file is missing, has another
/// format version, or was compiled for a different (ancilla, n).
std::optional<EvaluationPlan> load_plan(const std::filesystem::path& path, const AncillaSpec& spec, int modes);

/// Cache file name for (ancilla, n).
std::string plan_cache_name(const AncillaSpec& spec, int modes);

}  // namespace bellopt
