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

#include "bellopt/io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace bellopt {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad value for \"" + key + "\": " + e.what());
  }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

struct FamilyName {
  AncillaFamily family;
  const char* name;
  const char* parameter;  // nullptr when the family has none
};

constexpr FamilyName kFamilies[] = {
    {AncillaFamily::Vacuum, "vacuum", nullptr},      {AncillaFamily::SinglePhotons, "single_photons", "k"},
    {AncillaFamily::BellPairs, "bell_pairs", "m"},   {AncillaFamily::Ghz, "ghz", "k"},
    {AncillaFamily::W3, "w3", nullptr},              {AncillaFamily::Grice, "grice", "N"},
    {AncillaFamily::EvL, "evl", "N"},                {AncillaFamily::Custom, "custom", nullptr},
};

const FamilyName& family_entry(AncillaFamily f) {
  for (const auto& e : kFamilies) {
    if (e.family == f) return e;
  }
  throw std::logic_error("unknown ancilla family");
}

std::array<double, 4> to_array4(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ConfigError(where + ": expected 4 numbers");
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = j[i].get<double>();
  return out;
}

}  // namespace

json ancilla_to_json(const AncillaSpec& spec) {
  const FamilyName& entry = family_entry(spec.family);
  json j = {{"family", entry.name}};
  if (entry.parameter) j[entry.parameter] = spec.parameter;
  if (spec.family == AncillaFamily::Custom) {
    json terms = json::array();
    for (const auto& [m, c] : spec.custom->terms()) {
      terms.push_back({{"occupation", m.counts()}, {"re", c.real()}, {"im", c.imag()}});
    }
    j["modes"] = spec.custom->modes();
    j["terms"] = std::move(terms);
  }
  return j;
}

AncillaSpec ancilla_from_json(const json& j) {
  const std::string where = "ancilla";
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const auto name = get<std::string>(j, "family", where);
  const FamilyName* entry = nullptr;
  for (const auto& e : kFamilies) {
    if (name == e.name) entry = &e;
  }
  if (!entry) throw ConfigError(where + ": unknown family \"" + name + "\"");
  AncillaSpec spec;
  spec.family = entry->family;
  if (entry->family == AncillaFamily::Custom) {
    reject_unknown(j, {"family", "modes", "terms"}, where);
    const json& terms = j.contains("terms") ? j.at("terms") : json();
    if (!terms.is_array() || terms.empty()) throw ConfigError(where + ": custom ancilla needs a non-empty terms list");
    std::optional<std::size_t> modes;
    if (j.contains("modes")) modes = get<std::size_t>(j, "modes", where);
    Polynomial state;
    bool first = true;
    for (const json& t : terms) {
      reject_unknown(t, {"occupation", "re", "im"}, where + ".terms");
      const auto occ = get<std::vector<int>>(t, "occupation", where + ".terms");
      const Complex c(get_or<double>(t, "re", 0.0, where), get_or<double>(t, "im", 0.0, where));
      if (first) {
        state = Polynomial(modes.value_or(occ.size()));
        first = false;
      }
      if (occ.size() != state.modes()) throw ConfigError(where + ": occupation length does not match the mode count");
      try {
        state.add_term(Occupation(occ), c);
      } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    try {
      return AncillaSpec::from_polynomial(std::move(state));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (entry->parameter) {
    reject_unknown(j, {"family", entry->parameter}, where);
    spec.parameter = get<int>(j, entry->parameter, where);
  } else {
    reject_unknown(j, {"family"}, where);
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return spec;
}

json unitary_to_json(const UnitaryMatrix& u) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    json rr = json::array(), ir = json::array();
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
      rr.push_back(u(i, k).real());
      ir.push_back(u(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"n", u.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

UnitaryMatrix unitary_from_json(const json& j) {
  const std::string where = "unitary";
  reject_unknown(j, {"n", "re", "im"}, where);
  const auto n = get<int>(j, "n", where);
  if (n < 1) throw ConfigError(where + ": n must be >= 1");
  const auto re = get<std::vector<std::vector<double>>>(j, "re", where);
  const auto im = j.contains("im") ? get<std::vector<std::vector<double>>>(j, "im", where)
                                   : std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0));
  if (re.size() != static_cast<std::size_t>(n) || im.size() != static_cast<std::size_t>(n))
    throw ConfigError(where + ": expected " + std::to_string(n) + " rows");
  UnitaryMatrix u(n, n);
  for (int i = 0; i < n; ++i) {
    if (re[i].size() != static_cast<std::size_t>(n) || im[i].size() != static_cast<std::size_t>(n))
      throw ConfigError(where + ": row " + std::to_string(i) + " has the wrong length");
    for (int k = 0; k < n; ++k) u(i, k) = Complex(re[i][k], im[i][k]);
  }
  return u;
}

json circuit_to_json(const Circuit& c) {
  json out = json::array();
  for (const CircuitElement& e : c) {
    switch (e.kind) {
      case CircuitElement::Kind::BeamSplitter:
        out.push_back({{"type", "beamsplitter"}, {"modes", {e.first, e.second}}, {"theta", e.angle}});
        break;
      case CircuitElement::Kind::Phase:
        out.push_back({{"type", "phase"}, {"mode", e.first}, {"phi", e.angle}});
        break;
      case CircuitElement::Kind::Swap:
        out.push_back({{"type", "swap"}, {"modes", {e.first, e.second}}});
        break;
    }
  }
  return out;
}

Circuit circuit_from_json(const json& j) {
  const std::string where = "circuit";
  if (!j.is_array()) throw ConfigError(where + ": expected a list of elements");
  Circuit out;
  for (const json& e : j) {
    const auto type = get<std::string>(e, "type", where);
    if (type == "beamsplitter") {
      reject_unknown(e, {"type", "modes", "theta"}, where);
      const auto m = get<std::vector<int>>(e, "modes", where);
      if (m.size() != 2) throw ConfigError(where + ": beamsplitter needs two modes");
      out.push_back(CircuitElement::beamsplitter(m[0], m[1], get<double>(e, "theta", where)));
    } else if (type == "phase") {
      reject_unknown(e, {"type", "mode", "phi"}, where);
      out.push_back(CircuitElement::phase(get<int>(e, "mode", where), get<double>(e, "phi", where)));
    } else if (type == "swap") {
      reject_unknown(e, {"type", "modes"}, where);
      const auto m = get<std::vector<int>>(e, "modes", where);
      if (m.size() != 2) throw ConfigError(where + ": swap needs two modes");
      out.push_back(CircuitElement::swap(m[0], m[1]));
    } else {
      throw ConfigError(where + ": unknown element type \"" + type + "\"");
    }
  }
  return out;
}

json record_to_json(const RunRecord& r) {
  return {{"run", r.run_index},
          {"seed", r.seed},
          {"start_hash", r.start_hash},
          {"f", r.f},
          {"p_succ", r.p_succ},
          {"pattern", r.pattern.values},
          {"iterations", r.iterations},
          {"converged", r.converged},
          {"violation", r.constraint_violation},
          {"message", r.message},
          {"wall_seconds", r.wall_seconds},
          {"unitary", unitary_to_json(r.final_u)}};
}

RunRecord record_from_json(const json& j) {
  const std::string where = "record";
  RunRecord r;
  r.run_index = get<std::uint64_t>(j, "run", where);
  r.seed = get<std::uint64_t>(j, "seed", where);
  r.start_hash = get_or<std::string>(j, "start_hash", "", where);
  r.f = get<double>(j, "f", where);
  r.p_succ = get<double>(j, "p_succ", where);
  r.pattern.values = to_array4(j.at("pattern"), where);
  r.iterations = get_or<int>(j, "iterations", 0, where);
  r.converged = get<bool>(j, "converged", where);
  r.constraint_violation = get_or<double>(j, "violation", 0.0, where);
  r.message = get_or<std::string>(j, "message", "", where);
  r.wall_seconds = get_or<double>(j, "wall_seconds", 0.0, where);
  r.final_u = unitary_from_json(j.at("unitary"));
  return r;
}

json summary_to_json(const CampaignSummary& s) {
  json hist = json::array();
  for (const HistogramBin& b : s.histogram) hist.push_back({{"p_succ", b.value}, {"count", b.count}});
  json patterns = json::array();
  for (const PatternCount& p : s.patterns)
    patterns.push_back({{"pattern", p.sorted}, {"p_succ", p.p_succ}, {"count", p.count}});
  json j = {{"ancilla", ancilla_to_json(s.ancilla)},
            {"n", s.modes},
            {"seed", s.seed},
            {"runs", s.runs},
            {"converged_runs", s.converged_runs},
            {"histogram", std::move(hist)},
            {"patterns", std::move(patterns)},
            {"best", nullptr},
            {"timing", {{"wall_seconds", s.wall_seconds}}}};
  if (s.best_run) {
    j["best"] = {{"run", *s.best_run}, {"p_succ", s.best_p_succ}, {"f", s.best_f}, {"pattern", s.best_pattern}};
  }
  return j;
}

CampaignSummary summary_from_json(const json& j) {
  const std::string where = "summary";
  CampaignSummary s;
  s.ancilla = ancilla_from_json(j.at("ancilla"));
  s.modes = get<int>(j, "n", where);
  s.seed = get_or<std::uint64_t>(j, "seed", 0, where);
  s.runs = get<std::uint64_t>(j, "runs", where);
  s.converged_runs = get<std::uint64_t>(j, "converged_runs", where);
  for (const json& b : j.at("histogram")) s.histogram.push_back({b.at("p_succ").get<double>(), b.at("count").get<std::uint64_t>()});
  for (const json& p : j.at("patterns")) {
    s.patterns.push_back({to_array4(p.at("pattern"), where), p.at("p_succ").get<double>(), p.at("count").get<std::uint64_t>()});
  }
  if (j.contains("best") && !j.at("best").is_null()) {
    const json& b = j.at("best");
    s.best_run = b.at("run").get<std::uint64_t>();
    s.best_p_succ = b.at("p_succ").get<double>();
    s.best_f = b.at("f").get<double>();
    s.best_pattern = to_array4(b.at("pattern"), where);
  }
  if (j.contains("timing")) s.wall_seconds = j.at("timing").value("wall_seconds", 0.0);
  return s;
}

json config_to_json(const CampaignConfig& c) {
  return {{"ancilla", ancilla_to_json(c.ancilla)},
          {"n", c.modes},
          {"runs", c.runs},
          {"seed", c.seed},
          {"parallelism", c.parallelism},
          {"output", c.output},
          {"optimizer",
           {{"max_iterations", c.optimizer.max_iterations},
            {"f_tolerance", c.optimizer.f_tolerance},
            {"constraint_tolerance", c.optimizer.constraint_tolerance},
            {"eps_zero", c.optimizer.eps_zero},
            {"parameterization",
             c.optimizer.parameterization == Parameterization::Constrained ? "constrained" : "exponential"}}}};
}

CampaignConfig config_from_json(const json& j) {
  const std::string where = "config";
  reject_unknown(j, {"ancilla", "n", "runs", "seed", "parallelism", "output", "optimizer"}, where);
  CampaignConfig c;
  if (!j.contains("ancilla")) throw ConfigError(where + ": missing key \"ancilla\"");
  c.ancilla = ancilla_from_json(j.at("ancilla"));
  c.modes = get_or<int>(j, "n", 4 + c.ancilla.modes(), where);
  const auto runs = get_or<std::int64_t>(j, "runs", 100, where);
  if (runs < 1) throw ConfigError(where + ": runs must be >= 1");
  c.runs = static_cast<std::uint64_t>(runs);
  c.seed = get_or<std::uint64_t>(j, "seed", 1, where);
  c.parallelism = get_or<int>(j, "parallelism", 1, where);
  c.output = get_or<std::string>(j, "output", "", where);
  if (j.contains("optimizer")) {
    const json& o = j.at("optimizer");
    const std::string ow = where + ".optimizer";
    reject_unknown(o, {"max_iterations", "f_tolerance", "constraint_tolerance", "eps_zero", "parameterization"}, ow);
    c.optimizer.max_iterations = get_or<int>(o, "max_iterations", c.optimizer.max_iterations, ow);
    c.optimizer.f_tolerance = get_or<double>(o, "f_tolerance", c.optimizer.f_tolerance, ow);
    c.optimizer.constraint_tolerance = get_or<double>(o, "constraint_tolerance", c.optimizer.constraint_tolerance, ow);
    c.optimizer.eps_zero = get_or<double>(o, "eps_zero", c.optimizer.eps_zero, ow);
    const auto param = get_or<std::string>(o, "parameterization", "constrained", ow);
    if (param == "constrained") c.optimizer.parameterization = Parameterization::Constrained;
    else if (param == "exponential") c.optimizer.parameterization = Parameterization::Exponential;
    else throw ConfigError(ow + ": unknown parameterization \"" + param + "\"");
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  return c;
}

json campaign_header(const CampaignConfig& c) { return {{"campaign", config_to_json(c)}}; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

RecordFile read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  RecordFile out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (j.contains("campaign") && !out.config && out.records.empty()) {
        out.config = config_from_json(j.at("campaign"));
        continue;
      }
      out.records.push_back(record_from_json(j));
    } catch (const std::exception&) {
      ++out.skipped_lines;
    }
  }
  return out;
}

namespace {

constexpr char kPlanMagic[8] = {'B', 'O', 'P', 'L', 'A', 'N', '\0', '\0'};
constexpr std::uint32_t kPlanVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <typename T>
  void pod(const T& v) {
    out_.write(reinterpret_cast<const char*>(&v), sizeof v);
  }
  template <typename T>
  void vec(const std::vector<T>& v) {
    pod(static_cast<std::uint64_t>(v.size()));
    if (!v.empty()) out_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  template <typename T>
  T pod() {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in_) throw IoError("truncated plan file");
    return v;
  }
  template <typename T>
  std::vector<T> vec() {
    const auto n = pod<std::uint64_t>();
    if (n > (1ull << 32)) throw IoError("corrupt plan file");
    std::vector<T> v(n);
    if (n) in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    if (!in_) throw IoError("truncated plan file");
    return v;
  }

 private:
  std::istream& in_;
};

// Registers may only refer backwards; inputs must stay inside U.
void check_tape(const Tape& t, std::size_t modes) {
  const std::size_t n = t.code.size();
  bool ok = t.value_length <= n && t.value < std::max<std::size_t>(t.value_length, 1) && t.columns <= modes;
  for (std::size_t r = 0; ok && r < n; ++r) {
    const Instruction& ins = t.code[r];
    switch (ins.op) {
      case OpCode::Input: ok = ins.lhs < modes && ins.rhs < t.columns; break;
      case OpCode::Constant: ok = ins.lhs < t.constants.size(); break;
      case OpCode::Add:
      case OpCode::Mul: ok = ins.lhs < r && ins.rhs < r; break;
      case OpCode::Neg: ok = ins.lhs < r; break;
      default: ok = false;
    }
  }
  for (const Tape::Derivative& d : t.derivatives) ok = ok && d.reg < n && d.row < modes && d.column < t.columns;
  if (!ok) throw IoError("corrupt plan file");
}

std::string plan_key(const AncillaSpec& spec, int modes) {
  return json({{"ancilla", ancilla_to_json(spec)}, {"n", modes}}).dump();
}

}  // namespace

std::string plan_cache_name(const AncillaSpec& spec, int modes) {
  std::string label;
  for (char c : spec.label()) label += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (spec.family == AncillaFamily::Custom) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : plan_key(spec, modes)) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    label += "_" + os.str();
  }
  return label + "_n" + std::to_string(modes) + ".plan";
}

void save_plan(const EvaluationPlan& plan, const std::filesystem::path& path) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + tmp.string());
    Writer w(out);
    out.write(kPlanMagic, sizeof kPlanMagic);
    w.pod(kPlanVersion);
    const std::string key = plan_key(plan.ancilla(), static_cast<int>(plan.modes()));
    w.vec(std::vector<char>(key.begin(), key.end()));
    w.pod(static_cast<std::uint64_t>(plan.statistics().dag_nodes));
    w.pod(static_cast<std::uint64_t>(plan.classes().size()));
    for (std::size_t c = 0; c < plan.classes().size(); ++c) {
      const EventClass& ec = plan.classes()[c];
      w.vec(ec.partition);
      w.vec(ec.representative.counts());
      const Tape& t = plan.tapes()[c];
      w.vec(t.code);
      w.vec(t.constants);
      w.pod(t.value_length);
      w.pod(t.value);
      w.vec(t.derivatives);
      w.pod(t.columns);
    }
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::optional<EvaluationPlan> load_plan(const std::filesystem::path& path, const AncillaSpec& spec, int modes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[sizeof kPlanMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kPlanMagic, sizeof magic) != 0) return std::nullopt;
  Reader r(in);
  if (r.pod<std::uint32_t>() != kPlanVersion) return std::nullopt;
  const auto key = r.vec<char>();
  if (std::string(key.begin(), key.end()) != plan_key(spec, modes)) return std::nullopt;
  const auto dag_nodes = r.pod<std::uint64_t>();
  const auto count = r.pod<std::uint64_t>();
  std::vector<EventClass> classes;
  std::vector<Tape> tapes;
  for (std::uint64_t c = 0; c < count; ++c) {
    EventClass ec;
    ec.partition = r.vec<int>();
    ec.representative = Occupation(r.vec<int>());
    Tape t;
    t.code = r.vec<Instruction>();
    t.constants = r.vec<Complex>();
    t.value_length = r.pod<std::uint32_t>();
    t.value = r.pod<std::uint32_t>();
    t.derivatives = r.vec<Tape::Derivative>();
    t.columns = r.pod<std::uint32_t>();
    check_tape(t, static_cast<std::size_t>(modes));
    if (t.columns > ec.partition.size() || ec.representative.modes() != static_cast<std::size_t>(modes))
      throw IoError("corrupt plan file");
    classes.push_back(std::move(ec));
    tapes.push_back(std::move(t));
  }
  try {
    return EvaluationPlan::assemble(spec, static_cast<std::size_t>(modes), std::move(classes), std::move(tapes),
                                    static_cast<std::size_t>(dag_nodes));
  } catch (const std::invalid_argument&) {
    throw IoError("corrupt plan file " + path.string());
  }
}

}  // namespace bellopt
