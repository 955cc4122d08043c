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

#include <gtest/gtest.h>

#include <fstream>
#include <numbers>

#include "bellopt/report.hpp"
#include "support.hpp"

namespace bellopt {
namespace {

namespace fs = std::filesystem;

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bellopt_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(AncillaJson, RoundTripAllFamilies) {
  for (const AncillaSpec& s : {AncillaSpec::vacuum(), AncillaSpec::single_photons(3), AncillaSpec::bell_pairs(2),
                               AncillaSpec::ghz(3), AncillaSpec::w3(), AncillaSpec::grice(2), AncillaSpec::evl(1)}) {
    const AncillaSpec back = ancilla_from_json(ancilla_to_json(s));
    EXPECT_EQ(back.label(), s.label());
    EXPECT_EQ(back.photons(), s.photons());
  }
  EXPECT_EQ(ancilla_to_json(AncillaSpec::bell_pairs(2)), json::parse(R"({"family":"bell_pairs","m":2})"));
}

TEST(AncillaJson, Custom) {
  const json j = json::parse(R"({"family":"custom","modes":2,"terms":[
      {"occupation":[1,0],"re":0.6,"im":0.0},{"occupation":[0,1],"re":0.0,"im":0.8}]})");
  const AncillaSpec s = ancilla_from_json(j);
  EXPECT_EQ(s.photons(), 1);
  EXPECT_EQ(s.modes(), 2);
  const AncillaSpec back = ancilla_from_json(ancilla_to_json(s));
  EXPECT_EQ(ancilla_polynomial(back).terms(), ancilla_polynomial(s).terms());
}

TEST(AncillaJson, Rejections) {
  for (const char* text : {R"({"family":"photons","k":2})", R"({"family":"single_photons"})",
                           R"({"family":"single_photons","k":-1})", R"({"family":"ghz","k":1})",
                           R"({"family":"vacuum","k":1})", R"({"family":"custom","modes":2,"terms":[]})",
                           R"({"family":"custom","modes":2,"terms":[{"occupation":[1],"re":1,"im":0}]})",
                           R"({"family":"custom","modes":2,"terms":[{"occupation":[1,0],"re":0.5,"im":0}]})",
                           R"([1,2])", R"({"family":"single_photons","k":"two"})"}) {
    EXPECT_THROW(ancilla_from_json(json::parse(text)), ConfigError) << text;
  }
}

TEST(UnitaryJson, RoundTripIsExact) {
  const UnitaryMatrix u = testing::random_unitary(5, 8);
  const UnitaryMatrix back = unitary_from_json(json::parse(unitary_to_json(u).dump()));
  EXPECT_EQ(back, u);
  EXPECT_THROW(unitary_from_json(json::parse(R"({"n":2,"re":[[1,0]],"im":[[0,0]]})")), ConfigError);
  EXPECT_THROW(unitary_from_json(json::parse(R"({"n":0,"re":[],"im":[]})")), ConfigError);
}

TEST(CircuitJson, RoundTrip) {
  const Circuit c{CircuitElement::beamsplitter(0, 2, std::numbers::pi / 4), CircuitElement::phase(1, 0.3),
                  CircuitElement::swap(1, 3)};
  const Circuit back = circuit_from_json(circuit_to_json(c));
  EXPECT_TRUE(circuit_to_unitary(back, 4).isApprox(circuit_to_unitary(c, 4), 1e-15));
  EXPECT_THROW(circuit_from_json(json::parse(R"([{"type":"mirror","mode":0}])")), ConfigError);
  EXPECT_THROW(circuit_from_json(json::parse(R"([{"type":"beamsplitter","modes":[0],"theta":1}])")), ConfigError);
}

RunRecord sample_record(std::uint64_t index) {
  RunRecord r;
  r.run_index = index;
  r.seed = derived_seed(7, index);
  r.final_u = testing::random_unitary(4, index);
  r.start_hash = unitary_hash(r.final_u);
  r.f = -2.0 + 1e-3 * static_cast<double>(index);
  r.p_succ = 0.5;
  r.pattern.values = {1.0, 1.0, 0.0, 0.0};
  r.iterations = 17;
  r.converged = true;
  r.constraint_violation = 1e-12;
  r.message = "converged";
  return r;
}

TEST(RecordJson, RoundTrip) {
  const RunRecord r = sample_record(3);
  const RunRecord back = record_from_json(json::parse(record_to_json(r).dump()));
  EXPECT_EQ(back.run_index, r.run_index);
  EXPECT_EQ(back.seed, r.seed);
  EXPECT_EQ(back.start_hash, r.start_hash);
  EXPECT_EQ(back.f, r.f);
  EXPECT_EQ(back.pattern.values, r.pattern.values);
  EXPECT_EQ(back.final_u, r.final_u);
  EXPECT_EQ(back.converged, r.converged);
}

TEST(ConfigJson, DefaultsAndRoundTrip) {
  const CampaignConfig c = config_from_json(json::parse(R"({"ancilla":{"family":"single_photons","k":2},"n":6})"));
  EXPECT_EQ(c.modes, 6);
  EXPECT_EQ(c.runs, CampaignConfig{}.runs);
  EXPECT_EQ(c.optimizer.max_iterations, 1000);
  EXPECT_EQ(c.optimizer.eps_zero, 1e-9);
  const CampaignConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(ConfigJson, Rejections) {
  for (const char* text : {R"({"n":6})", R"({"ancilla":{"family":"vacuum"},"n":3})",
                           R"({"ancilla":{"family":"vacuum"},"n":4,"runs":0})",
                           R"({"ancilla":{"family":"vacuum"},"n":4,"colour":"red"})",
                           R"({"ancilla":{"family":"vacuum"},"n":4,"optimizer":{"eps_zero":-1}})",
                           R"({"ancilla":{"family":"vacuum"},"n":4,"optimizer":{"parameterization":"polar"}})",
                           R"({"ancilla":{"family":"bell_pairs","m":1},"n":6})"}) {
    EXPECT_THROW(config_from_json(json::parse(text)), ConfigError) << text;
  }
}

TEST(SummaryJson, RoundTrip) {
  std::vector<RunRecord> records{sample_record(0), sample_record(1), sample_record(2)};
  records[1].converged = false;
  const CampaignSummary s = summarize(AncillaSpec::vacuum(), 4, 7, records);
  const CampaignSummary back = summary_from_json(summary_to_json(s));
  EXPECT_EQ(summary_to_json(back), summary_to_json(s));
  EXPECT_EQ(back.converged_runs, 2u);
  ASSERT_TRUE(back.best_run);
  EXPECT_EQ(*back.best_run, 0u);
  const CampaignSummary empty = summarize(AncillaSpec::vacuum(), 4, 7, {});
  EXPECT_TRUE(summary_to_json(empty).at("best").is_null());
}

TEST_F(TempDir, JsonFileAtomicWrite) {
  const fs::path p = dir_ / "x.json";
  write_json_file(p, json{{"a", 1}});
  EXPECT_EQ(read_json_file(p).at("a"), 1);
  EXPECT_FALSE(fs::exists(dir_ / "x.json.tmp"));
  EXPECT_THROW(read_json_file(dir_ / "missing.json"), IoError);
  std::ofstream(dir_ / "bad.json") << "{not json";
  EXPECT_THROW(read_json_file(dir_ / "bad.json"), ConfigError);
  EXPECT_THROW(write_json_file(dir_ / "no" / "such" / "dir.json", json{}), IoError);
}

TEST_F(TempDir, RecordsSkipDamagedLines) {
  CampaignConfig c;
  c.ancilla = AncillaSpec::vacuum();
  c.modes = 4;
  const fs::path p = dir_ / "runs.jsonl";
  {
    std::ofstream out(p);
    out << campaign_header(c).dump() << "\n";
    out << record_to_json(sample_record(0)).dump() << "\n";
    out << "\n";
    out << record_to_json(sample_record(1)).dump().substr(0, 40) << "\n";
    out << record_to_json(sample_record(2)).dump() << "\n";
  }
  const RecordFile f = read_records(p);
  ASSERT_TRUE(f.config);
  EXPECT_EQ(f.config->modes, 4);
  ASSERT_EQ(f.records.size(), 2u);
  EXPECT_EQ(f.records[1].run_index, 2u);
  EXPECT_EQ(f.skipped_lines, 1u);
  EXPECT_THROW(read_records(dir_ / "absent.jsonl"), IoError);
}

TEST_F(TempDir, PlanCacheRoundTrip) {
  const AncillaSpec spec = AncillaSpec::single_photons(1);
  const EvaluationPlan plan = compile(spec, 5);
  const fs::path p = dir_ / plan_cache_name(spec, 5);
  save_plan(plan, p);
  const std::optional<EvaluationPlan> back = load_plan(p, spec, 5);
  ASSERT_TRUE(back);
  const UnitaryMatrix u = testing::random_unitary(5, 2);
  EXPECT_EQ(evaluate(*back, u).values, evaluate(plan, u).values);
  EXPECT_FALSE(load_plan(p, spec, 6));
  EXPECT_FALSE(load_plan(p, AncillaSpec::vacuum(), 5));
  EXPECT_FALSE(load_plan(dir_ / "none.plan", spec, 5));
  EXPECT_NE(plan_cache_name(spec, 5), plan_cache_name(spec, 6));
}

TEST_F(TempDir, PlanCacheCorruption) {
  const AncillaSpec spec = AncillaSpec::single_photons(1);
  const fs::path p = dir_ / "plan.bin";
  save_plan(compile(spec, 5), p);
  const auto size = fs::file_size(p);
  {
    // Damage the tape area well past the header.
    std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(static_cast<std::streamoff>(size / 2));
    const std::string junk(64, '\xff');
    f.write(junk.data(), static_cast<std::streamsize>(junk.size()));
  }
  EXPECT_THROW(load_plan(p, spec, 5), IoError);
  fs::resize_file(p, size / 3);
  EXPECT_THROW(load_plan(p, spec, 5), IoError);
}

TEST(Report, LiteratureValues) {
  EXPECT_EQ(literature_value(AncillaSpec::single_photons(2))->value, Rational(5, 8));
  EXPECT_EQ(literature_value(AncillaSpec::single_photons(12))->value, Rational(25, 32));
  EXPECT_EQ(literature_value(AncillaSpec::grice(2))->value, Rational(7, 8));
  EXPECT_EQ(literature_value(AncillaSpec::evl(2))->value, Rational(7, 8));
  EXPECT_EQ(literature_value(AncillaSpec::w3())->value, Rational(7, 12));
}

TEST(Report, RowAndFlagging) {
  std::vector<RunRecord> records{sample_record(0), sample_record(1)};
  ReportRow row = make_row("x", AncillaSpec::vacuum(), 4, records);
  ASSERT_TRUE(row.best);
  EXPECT_DOUBLE_EQ(*row.best, 0.5);
  ASSERT_TRUE(row.snapped);
  EXPECT_EQ(row.snapped->denominator, 2);
  EXPECT_FALSE(row.flagged);
  records[0].p_succ = 0.6;
  row = make_row("x", AncillaSpec::vacuum(), 4, records);
  EXPECT_TRUE(row.flagged);
  const std::string text = render_text({row});
  EXPECT_NE(text.find("vacuum"), std::string::npos);
  EXPECT_EQ(render_json({row}).size(), 1u);
}

}  // namespace
}  // namespace bellopt
