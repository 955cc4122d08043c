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

#include "bellopt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bellopt {

std::optional<LiteratureValue> literature_value(const AncillaSpec& spec) {
  const int p = spec.parameter;
  switch (spec.family) {
    case AncillaFamily::Vacuum: return LiteratureValue{Rational(1, 2), "Calsamiglia-Lutkenhaus"};
    case AncillaFamily::BellPairs:
      if (p == 1) return LiteratureValue{Rational(3, 4), "Grice"};
      if (p > 1) return LiteratureValue{Rational(3, 4), "smaller ancilla, extra modes ignored"};
      return LiteratureValue{Rational(1, 2), "vacuum"};
    case AncillaFamily::SinglePhotons:
      switch (p) {
        case 0:
        case 1: return LiteratureValue{Rational(1, 2), "smaller ancilla, extra modes ignored"};
        case 2: return LiteratureValue{Rational(5, 8), "two single photons"};
        case 3: return LiteratureValue{Rational(5, 8), "smaller ancilla, extra modes ignored"};
        case 4: return LiteratureValue{Rational(3, 4), "Ewert-van Loock"};
        case 5:
        case 6:
        case 7: return LiteratureValue{Rational(3, 4), "smaller ancilla, extra modes ignored"};
        case 8: return LiteratureValue{Rational(49, 64), "eight single photons"};
        case 12: return LiteratureValue{Rational(25, 32), "Ewert-van Loock"};
        default: return std::nullopt;
      }
    case AncillaFamily::Ghz:
      return LiteratureValue{Rational(3, 4), "measure ancilla, keep one Bell pair"};
    case AncillaFamily::W3: return LiteratureValue{Rational(7, 12), "measure and reuse two modes"};
    case AncillaFamily::Grice: {
      const int k = spec.photons();
      return LiteratureValue{Rational(k + 1, k + 2), "Grice"};
    }
    case AncillaFamily::EvL: {
      const int k = spec.photons();
      return LiteratureValue{Rational(k + 2, k + 4), "Ewert-van Loock"};
    }
    case AncillaFamily::Custom: return std::nullopt;
  }
  return std::nullopt;
}

ReportRow make_row(const std::string& source, const AncillaSpec& spec, int modes, const std::vector<RunRecord>& records,
                   std::size_t skipped_lines) {
  ReportRow row;
  row.source = source;
  row.label = spec.label();
  row.modes = modes;
  row.photons = spec.photons();
  row.skipped_lines = skipped_lines;
  row.literature = literature_value(spec);
  row.photon_bound = photon_number_bound(spec.photons());
  try {
    const RotatedBound b = best_rotated_bound(spec);
    row.ancilla_bound = b.value;
    row.ancilla_bound_exact = b.exact;
  } catch (const std::exception&) {
    // No pairing or too many pairs: the row simply has no ancilla bound.
  }
  const CampaignSummary s = summarize(spec, modes, 0, records);
  row.runs = s.runs;
  row.converged_runs = s.converged_runs;
  if (s.best_run) {
    row.best = s.best_p_succ;
    row.snapped = snap_rational(s.best_p_succ);
    const double limit = std::min({1.0, to_double(row.photon_bound), row.ancilla_bound.value_or(1.0)});
    row.flagged = s.best_p_succ > limit + 1e-7;
  }
  return row;
}

ReportRow row_from_file(const std::filesystem::path& path) {
  const RecordFile file = read_records(path);
  if (!file.config) throw ConfigError(path.string() + ": no campaign header line");
  return make_row(path.string(), file.config->ancilla, file.config->modes, file.records, file.skipped_lines);
}

namespace {

std::string fraction_text(const std::optional<Fraction>& f) {
  if (!f) return "-";
  if (f->denominator == 1) return std::to_string(f->numerator);
  return std::to_string(f->numerator) + "/" + std::to_string(f->denominator);
}

std::string bound_text(const std::optional<Rational>& exact, const std::optional<double>& value) {
  if (exact) return to_string(*exact);
  if (value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", *value);
    return buf;
  }
  return "-";
}

}  // namespace

std::string render_text(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-18s %4s %4s %9s %12s %8s %10s %9s %9s %s\n", "ancilla", "n", "k", "runs",
                "best", "snapped", "literature", "upp", "upp(k)", "flags");
  os << line;
  for (const ReportRow& r : rows) {
    char best[32] = "-";
    if (r.best) std::snprintf(best, sizeof best, "%.9f", *r.best);
    std::string flags = r.flagged ? "BOUND-VIOLATION" : "";
    if (r.skipped_lines) flags += (flags.empty() ? "" : ",") + std::string("skipped=") + std::to_string(r.skipped_lines);
    std::snprintf(line, sizeof line, "%-18s %4d %4d %4llu/%-4llu %12s %8s %10s %9s %9s %s\n", r.label.c_str(),
                  r.modes, r.photons, static_cast<unsigned long long>(r.converged_runs),
                  static_cast<unsigned long long>(r.runs), best, fraction_text(r.snapped).c_str(),
                  r.literature ? to_string(r.literature->value).c_str() : "-",
                  bound_text(r.ancilla_bound_exact, r.ancilla_bound).c_str(), to_string(r.photon_bound).c_str(),
                  flags.c_str());
    os << line;
  }
  return os.str();
}

json render_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const ReportRow& r : rows) {
    json j = {{"source", r.source},
              {"ancilla", r.label},
              {"n", r.modes},
              {"k", r.photons},
              {"runs", r.runs},
              {"converged_runs", r.converged_runs},
              {"best", nullptr},
              {"snapped", nullptr},
              {"literature", nullptr},
              {"ancilla_bound", nullptr},
              {"photon_bound", to_string(r.photon_bound)},
              {"skipped_lines", r.skipped_lines},
              {"flagged", r.flagged}};
    if (r.best) j["best"] = *r.best;
    if (r.snapped) j["snapped"] = fraction_text(r.snapped);
    if (r.literature) j["literature"] = {{"value", to_string(r.literature->value)}, {"note", r.literature->note}};
    if (r.ancilla_bound) j["ancilla_bound"] = bound_text(r.ancilla_bound_exact, r.ancilla_bound);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace bellopt
