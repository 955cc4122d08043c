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

#include <optional>
#include <string>
#include <vector>

#include "bellopt/bounds.hpp"
#include "bellopt/campaign.hpp"
#include "bellopt/io.hpp"

namespace bellopt {

/// Best published explicit scheme for an ancilla. These are literature
/// values, not computed here.
struct LiteratureValue {
  Rational value;
  std::string note;
};

std::optional<LiteratureValue> literature_value(const AncillaSpec& spec);

struct ReportRow {
  std::string source;
  std::string label;
  int modes = 0;
  int photons = 0;
  std::uint64_t runs = 0;
  std::uint64_t converged_runs = 0;
  std::optional<double> best;
  std::optional<Fraction> snapped;
  std::optional<LiteratureValue> literature;
  /// Polarization-preserving bound for this ancilla, best over pi/4 rotations.
  std::optional<double> ancilla_bound;
  std::optional<Rational> ancilla_bound_exact;
  Rational photon_bound;
  std::size_t skipped_lines = 0;
  /// best exceeds one of the bounds (or 1) by more than 1e-7.
  bool flagged = false;
};

ReportRow make_row(const std::string& source, const AncillaSpec& spec, int modes, const std::vector<RunRecord>& records,
                   std::size_t skipped_lines = 0);

/// Row for a campaign stream written by the optimize command.
ReportRow row_from_file(const std::filesystem::path& path);

std::string render_text(const std::vector<ReportRow>& rows);
json render_json(const std::vector<ReportRow>& rows);

}  // namespace bellopt
