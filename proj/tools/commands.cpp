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

#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>

#include "bellopt/bounds.hpp"
#include "bellopt/campaign.hpp"
#include "bellopt/io.hpp"
#include "bellopt/report.hpp"

namespace bellopt::cli {

namespace fs = std::filesystem;

namespace {

std::string fixed(double v, int digits = 9) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string snapped_text(double v) {
  const auto f = snap_rational(v);
  if (!f) return "";
  if (f->denominator == 1) return std::to_string(f->numerator);
  return std::to_string(f->numerator) + "/" + std::to_string(f->denominator);
}

std::string pattern_text(const std::array<double, 4>& p) {
  std::string out = "(";
  for (int i = 0; i < 4; ++i) {
    const std::string s = snapped_text(p[i]);
    out += (i ? ", " : "") + (s.empty() ? fixed(p[i], 6) : s);
  }
  return out + ")";
}

// Accepts JSON text, a JSON file, or "family[:parameter]".
AncillaSpec parse_ancilla(const std::string& text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return ancilla_from_json(json::parse(text));
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("ancilla: ") + e.what());
    }
  }
  if (fs::exists(text)) return ancilla_from_json(read_json_file(text));
  const auto colon = text.find(':');
  json j = {{"family", text.substr(0, colon)}};
  if (colon != std::string::npos) {
    const std::string family = text.substr(0, colon);
    const std::string key = family == "bell_pairs" ? "m" : (family == "grice" || family == "evl") ? "N" : "k";
    try {
      j[key] = std::stoi(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw ConfigError("ancilla: bad parameter in \"" + text + "\"");
    }
  }
  return ancilla_from_json(j);
}

EvaluationPlan obtain_plan(const AncillaSpec& spec, int modes, const std::string& cache_dir, std::size_t ceiling) {
  CompileOptions options;
  options.node_ceiling = ceiling;
  if (cache_dir.empty()) return compile(spec, modes, options);
  const fs::path path = fs::path(cache_dir) / plan_cache_name(spec, modes);
  if (auto cached = load_plan(path, spec, modes)) return std::move(*cached);
  EvaluationPlan plan = compile(spec, modes, options);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  save_plan(plan, path);
  return plan;
}

struct OptimizeArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> runs;
  std::optional<int> parallelism;
  std::optional<double> eps_zero;
  std::optional<std::string> output;
  std::string plan_cache;
  std::size_t node_ceiling = CompileOptions{}.node_ceiling;
};

int cmd_optimize(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  CampaignConfig config = config_from_json(read_json_file(args.config));
  if (args.seed) config.seed = *args.seed;
  if (args.runs) config.runs = *args.runs;
  if (args.parallelism) config.parallelism = *args.parallelism;
  if (args.eps_zero) config.optimizer.eps_zero = *args.eps_zero;
  if (args.output) config.output = *args.output;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  const EvaluationPlan plan = obtain_plan(config.ancilla, config.modes, args.plan_cache, args.node_ceiling);
  out << "compiled " << config.ancilla.label() << " n=" << config.modes << ": " << plan.classes().size()
      << " classes, " << plan.events()->size() << " events, " << plan.statistics().dag_nodes << " nodes\n";

  std::vector<RunRecord> previous;
  std::ofstream stream;
  fs::path records_path, summary_path;
  if (!config.output.empty()) {
    records_path = config.output + ".jsonl";
    summary_path = config.output + ".summary.json";
    // The header must describe the same campaign, only the run count may grow.
    CampaignConfig key = config;
    key.runs = 1;
    key.parallelism = 1;
    key.output.clear();
    if (fs::exists(records_path)) {
      RecordFile existing = read_records(records_path);
      if (existing.config) {
        CampaignConfig other = *existing.config;
        other.runs = 1;
        other.parallelism = 1;
        other.output.clear();
        if (config_to_json(other) != config_to_json(key))
          throw ConfigError(records_path.string() + " belongs to a different campaign");
      }
      previous = std::move(existing.records);
      if (existing.skipped_lines) err << "warning: skipped " << existing.skipped_lines << " corrupt lines\n";
      stream.open(records_path, std::ios::app);
      if (stream && !existing.config) stream << campaign_header(config).dump() << '\n';
      out << "resuming with " << previous.size() << " finished runs\n";
    } else {
      if (records_path.has_parent_path()) fs::create_directories(records_path.parent_path());
      stream.open(records_path);
      if (stream) stream << campaign_header(config).dump() << '\n';
    }
    if (!stream) throw IoError("cannot write " + records_path.string());
    stream.flush();
  }

  const RecordSink sink = [&](const RunRecord& r) {
    if (stream.is_open()) {
      stream << record_to_json(r).dump() << '\n';
      stream.flush();
    }
  };
  const CampaignSummary summary = run_campaign(plan, config, previous, sink);
  if (stream.is_open() && !stream) throw IoError("write failed for " + records_path.string());
  if (!summary_path.empty()) write_json_file(summary_path, summary_to_json(summary));

  out << "runs " << summary.runs << ", converged " << summary.converged_runs << ", "
      << fixed(summary.wall_seconds, 1) << " s\n";
  if (summary.best_run) {
    out << "best P_succ " << fixed(summary.best_p_succ) << " (" << snapped_text(summary.best_p_succ) << ") run "
        << *summary.best_run << ", pattern " << pattern_text(summary.best_pattern) << "\n";
  }
  out << "local optima:\n";
  for (const PatternCount& p : summary.patterns) {
    out << "  " << fixed(p.p_succ, 6) << "  " << pattern_text(p.sorted) << "  x" << p.count << "\n";
  }
  return kOk;
}

std::string weights_text(const PolarizationProfile& p) {
  std::string s = "[";
  for (std::size_t l = 0; l < p.weights.size(); ++l) {
    s += l ? ", " : "";
    s += p.is_exact() ? to_string(p.exact[l]) : fixed(p.weights[l], 9);
  }
  return s + "]";
}

std::string pairs_text(const std::vector<int>& pairs) {
  std::string s = "{";
  for (std::size_t i = 0; i < pairs.size(); ++i) s += (i ? ", " : "") + std::to_string(pairs[i]);
  return s + "}";
}

int cmd_bounds(const std::string& ancilla, bool rotations, bool as_json, std::ostream& out) {
  const AncillaSpec spec = parse_ancilla(ancilla);
  const int k = spec.photons();
  const PolarizationProfile plain = polarization_profile(spec);
  const Rational photon = photon_number_bound(k);
  auto show = [](const std::optional<Rational>& exact, double value) {
    return exact ? to_string(*exact) : fixed(value);
  };
  std::optional<RotatedBound> rotated;
  std::string refusal;
  if (rotations) {
    try {
      rotated = best_rotated_bound(spec);
    } catch (const BoundsGuardExceeded& e) {
      refusal = e.what();
    }
  }
  if (as_json) {
    json j = {{"ancilla", spec.label()},
              {"k", k},
              {"profile", plain.weights},
              {"generic_bound", show(generic_upper_bound_exact(plain), generic_upper_bound(plain))},
              {"pfail_lower_bound", show(pfail_lower_bound_exact(plain), pfail_lower_bound(plain))},
              {"photon_bound", to_string(photon)}};
    if (rotated) {
      j["rotated_bound"] = show(rotated->exact, rotated->value);
      j["rotated_pairs"] = rotated->rotated;
      j["rotated_profile"] = rotated->profile.weights;
    }
    if (!refusal.empty()) j["rotated_refused"] = refusal;
    out << j.dump(2) << "\n";
    return refusal.empty() ? kOk : kResourceRefusal;
  }
  out << "ancilla            " << spec.label() << "\n";
  out << "k                  " << k << "\n";
  out << "profile            " << weights_text(plain) << "\n";
  out << "generic bound      " << show(generic_upper_bound_exact(plain), generic_upper_bound(plain)) << "\n";
  out << "1 - pfail bound    "
      << show(pfail_lower_bound_exact(plain) ? std::optional<Rational>(1 - *pfail_lower_bound_exact(plain))
                                             : std::nullopt,
              1.0 - pfail_lower_bound(plain))
      << "\n";
  out << "photon bound       " << to_string(photon) << "\n";
  if (rotated) {
    out << "rotated bound      " << show(rotated->exact, rotated->value) << " with pairs "
        << pairs_text(rotated->rotated) << " rotated\n";
    out << "rotated profile    " << weights_text(rotated->profile) << "\n";
  }
  if (!refusal.empty()) out << "rotated bound      refused: " << refusal << "\n";
  return refusal.empty() ? kOk : kResourceRefusal;
}

struct VerifyArgs {
  std::string input;
  std::string ancilla;
  std::optional<int> modes;
  bool polish = false;
  double eps_zero = 1e-9;
  double tolerance = 1e-9;
  std::string plan_cache;
  std::size_t node_ceiling = CompileOptions{}.node_ceiling;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const AncillaSpec spec = parse_ancilla(args.ancilla);
  const json doc = read_json_file(args.input);
  UnitaryMatrix u;
  if (doc.is_array()) {
    const int modes = args.modes.value_or(4 + spec.modes());
    try {
      u = circuit_to_unitary(circuit_from_json(doc), modes);
    } catch (const std::out_of_range& e) {
      throw ConfigError(std::string("circuit: ") + e.what());
    }
  } else if (doc.is_object() && doc.contains("unitary")) {
    u = unitary_from_json(doc.at("unitary"));
  } else {
    u = unitary_from_json(doc);
  }
  const int modes = static_cast<int>(u.rows());
  if (args.modes && *args.modes != modes) throw ConfigError("unitary has " + std::to_string(modes) + " modes, not " +
                                                            std::to_string(*args.modes));
  if (modes < 4 + spec.modes())
    throw ConfigError("unitary has " + std::to_string(modes) + " modes but the input needs " +
                      std::to_string(4 + spec.modes()));
  try {
    validate_unitary(u, args.tolerance);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const EvaluationPlan plan = obtain_plan(spec, modes, args.plan_cache, args.node_ceiling);
  ProbabilityTable table = evaluate(plan, u);
  table.eps_zero = args.eps_zero;
  clamp_roundoff(table);
  const DiscriminationPattern pat = pattern(table);
  out << "ancilla      " << spec.label() << ", n = " << modes << "\n";
  out << "P_succ       " << fixed(pat.mean()) << "  " << snapped_text(pat.mean()) << "\n";
  out << "f            " << fixed(figure_of_merit(table)) << "\n";
  out << "pattern      " << pattern_text(pat.values) << "  (Phi+, Phi-, Psi+, Psi-)\n";
  out << "sorted       " << pattern_text(pat.sorted()) << "\n";
  out << "discriminating events:\n";
  std::size_t shown = 0;
  for (std::size_t e = 0; e < table.event_count(); ++e) {
    if (const auto beta = discriminated_state(table, e)) {
      out << "  " << (*plan.events())[e].to_string() << "  " << bell_name(*beta) << "  " << fixed(table(*beta, e))
          << "\n";
      ++shown;
    }
  }
  if (!shown) out << "  none\n";

  if (args.polish) {
    OptimizerConfig cfg;
    cfg.eps_zero = args.eps_zero;
    const RunRecord r = local_optimize(plan, u, cfg);
    out << "polished     P_succ " << fixed(r.p_succ) << "  " << snapped_text(r.p_succ) << ", f " << fixed(r.f)
        << ", " << r.iterations << " iterations, " << (r.converged ? "converged" : "not converged: " + r.message)
        << "\n";
    out << "polished pattern " << pattern_text(r.pattern.sorted()) << "\n";
    if (!r.converged) err << "warning: polishing did not converge\n";
  }
  return kOk;
}

int cmd_report(const std::vector<std::string>& files, bool as_json, std::ostream& out, std::ostream& err) {
  std::vector<ReportRow> rows;
  for (const std::string& f : files) {
    rows.push_back(row_from_file(f));
    if (rows.back().skipped_lines) err << "warning: " << f << ": skipped " << rows.back().skipped_lines
                                       << " corrupt lines\n";
    if (rows.back().flagged) err << "warning: " << f << ": best value exceeds a bound\n";
  }
  if (as_json) out << render_json(rows).dump(2) << "\n";
  else out << render_text(rows);
  return kOk;
}

int cmd_events(int modes, int photons, std::ostream& out) {
  if (modes < 1 || photons < 0) throw ConfigError("events: need n >= 1 and photons >= 0");
  const std::uint64_t events = binomial(modes + photons - 1, photons);
  const auto classes = integer_partitions(photons, modes).size();
  out << "n " << modes << ", photons " << photons << "\n";
  out << "events N           " << events << "\n";
  out << "table entries 4N   " << 4 * events << "\n";
  out << "partition classes  " << classes << "\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ancilla-assisted linear-optical Bell measurement: simulate, optimize, bound"};
  app.require_subcommand(1);

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Run a multistart campaign from a JSON config");
  optimize->add_option("config", opt.config, "Campaign config file")->required();
  optimize->add_option("--seed", opt.seed, "Master seed");
  optimize->add_option("--runs", opt.runs, "Number of runs");
  optimize->add_option("--parallelism", opt.parallelism, "Concurrent runs");
  optimize->add_option("--eps-zero", opt.eps_zero, "Zero threshold for probabilities");
  optimize->add_option("--output", opt.output, "Output base path (<base>.jsonl, <base>.summary.json)");
  optimize->add_option("--plan-cache", opt.plan_cache, "Directory for compiled plans");
  optimize->add_option("--node-ceiling", opt.node_ceiling, "Refuse plans with more DAG nodes");

  std::string bounds_ancilla;
  bool no_rotation = false, bounds_json = false;
  auto* bounds = app.add_subcommand("bounds", "Polarization-preserving upper bounds for an ancilla");
  bounds->add_option("ancilla", bounds_ancilla, "Ancilla as JSON, JSON file, or family[:parameter]")->required();
  bounds->add_flag("--no-rotation", no_rotation, "Skip the pi/4 rotation search");
  bounds->add_flag("--json", bounds_json, "Machine-readable output");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Evaluate a unitary or circuit");
  verify->add_option("input", ver.input, "Unitary, run record, or circuit JSON file")->required();
  verify->add_option("--ancilla", ver.ancilla, "Ancilla as JSON, JSON file, or family[:parameter]")
      ->default_val("vacuum");
  verify->add_option("--n", ver.modes, "Mode count (circuits default to 4 + ancilla modes)");
  verify->add_flag("--polish", ver.polish, "Locally optimize from the given unitary");
  verify->add_option("--eps-zero", ver.eps_zero, "Zero threshold for probabilities");
  verify->add_option("--tolerance", ver.tolerance, "Unitarity tolerance");
  verify->add_option("--plan-cache", ver.plan_cache, "Directory for compiled plans");
  verify->add_option("--node-ceiling", ver.node_ceiling, "Refuse plans with more DAG nodes");

  std::vector<std::string> report_files;
  bool report_json = false;
  auto* report = app.add_subcommand("report", "Compare campaign streams with known values and bounds");
  report->add_option("files", report_files, "Campaign .jsonl files");
  report->add_flag("--json", report_json, "Machine-readable output");

  int ev_modes = 4, ev_photons = 2;
  std::string ev_ancilla;
  auto* events = app.add_subcommand("events", "Detection-event and partition-class counts");
  events->add_option("--n", ev_modes, "Mode count");
  events->add_option("--photons", ev_photons, "Total photon count");
  events->add_option("--ancilla", ev_ancilla, "Take photons (and default n) from an ancilla");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*optimize) return cmd_optimize(opt, out, err);
    if (*bounds) return cmd_bounds(bounds_ancilla, !no_rotation, bounds_json, out);
    if (*verify) return cmd_verify(ver, out, err);
    if (*report) return cmd_report(report_files, report_json, out, err);
    if (*events) {
      if (!ev_ancilla.empty()) {
        const AncillaSpec spec = parse_ancilla(ev_ancilla);
        ev_photons = spec.photons() + 2;
        if (events->count("--n") == 0) ev_modes = 4 + spec.modes();
      }
      return cmd_events(ev_modes, ev_photons, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ResourceLimitExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kResourceRefusal;
  } catch (const BoundsGuardExceeded& e) {
    err << "refused: " << e.what() << "\n";
    return kResourceRefusal;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::out_of_range& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kConfigError;
}

}  // namespace bellopt::cli
