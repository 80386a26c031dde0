#include "mmc/benchmark.hpp"
#include "mmc/canonical.hpp"
#include "mmc/xml_io.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

namespace mmc {
namespace {

namespace fs = std::filesystem;

const Scenario &find(const std::vector<Scenario> &all, std::string_view key) {
  for (const Scenario &sc : all)
    if (sc.key() == key)
      return sc;
  throw std::logic_error("no such scenario");
}

TEST(Scenarios, TwelveWithUniqueKeys) {
  const auto all = builtin_scenarios();
  ASSERT_EQ(all.size(), 12u);
  std::set<std::string> keys;
  for (const Scenario &sc : all) {
    keys.insert(sc.key());
    validate(sc.old_model);
    validate(sc.new_model);
    EXPECT_FALSE(models_equivalent(sc.old_model, sc.new_model)) << sc.key();
    EXPECT_EQ(sc.expected.size(), default_matrix().size()) << sc.key();
  }
  EXPECT_EQ(keys.size(), 12u);
  EXPECT_TRUE(keys.count("S1-ecore"));
  EXPECT_TRUE(keys.count("S5b-bpmn"));
}

TEST(Scenarios, RenameScenarioChangesOnlyTheTaskName) {
  const auto all = builtin_scenarios();
  const Scenario &sc = find(all, "S2-bpmn");
  Model renamed = sc.old_model;
  for (Element &e : renamed.root.children)
    if (e.name == "Deliver Goods")
      e.name = "Send Items";
  EXPECT_TRUE(models_equivalent(renamed, sc.new_model));
}

TEST(Scenarios, ExchangeScenarioSwapsClasses) {
  const auto all = builtin_scenarios();
  const Scenario &sc = find(all, "S4-ecore");
  const std::string old_text = serialize_model(canonicalize(sc.old_model));
  const std::string new_text = serialize_model(canonicalize(sc.new_model));
  EXPECT_NE(old_text.find("DomesticAnimalNew"), std::string::npos);
  EXPECT_NE(new_text.find("DomesticAnimalNew"), std::string::npos);
  EXPECT_EQ(element_count(sc.old_model), element_count(sc.new_model));
}

TEST(Scenarios, ReferenceMatchingsRoundTrip) {
  for (const Scenario &sc : builtin_scenarios())
    for (Interpretation in : {Interpretation::Move, Interpretation::Rename})
      for (EdgePolicy p : {EdgePolicy::Strict, EdgePolicy::TargetFlexible}) {
        const ModelIndex io(sc.old_model), inew(sc.new_model);
        const Matching ref = reference_matching(sc, in, p);
        EXPECT_TRUE(matching_violations(io, inew, ref).empty()) << sc.key();
        const EditScript s = derive_edit_script(io, inew, ref);
        EXPECT_TRUE(models_equivalent(apply_edit_script(sc.old_model, s), sc.new_model)) << sc.key();
      }
}

TEST(Scenarios, ExpectedInterpretation) {
  EXPECT_EQ(expected_interpretation({Pipeline::TopDown, NameSimKind::Bigram, EdgePolicy::Strict, true}),
            Interpretation::Rename);
  EXPECT_EQ(expected_interpretation({Pipeline::TwoPhase, NameSimKind::Bigram, EdgePolicy::Strict, true}),
            Interpretation::Move);
  EXPECT_EQ(expected_interpretation({Pipeline::FullScope, NameSimKind::Bigram, EdgePolicy::Strict, false}),
            Interpretation::Rename);
}

TEST(DefaultMatrix, FourNamedConfigs) {
  std::vector<std::string> names;
  for (const NamedConfig &nc : default_matrix()) {
    names.push_back(nc.name);
    nc.config.validate();
  }
  EXPECT_EQ(names, (std::vector<std::string>{"topdown-bigram", "twophase-bigram",
                                             "twophase-semantic", "fullscope-bigram-flexible"}));
}

TEST(OutcomeOf, SortedKindLabelPairs) {
  const auto all = builtin_scenarios();
  const Scenario &sc = find(all, "S1-ecore");
  const Outcome o = outcome_of(diff_models(sc.old_model, sc.new_model, MatcherConfig{}));
  EXPECT_EQ(o, (Outcome{{EditKind::CreateElement, "shop"}, {EditKind::MoveElement, "DomesticAnimal"}}));
  EXPECT_EQ(describe(Outcome{}), "(none)");
}

TEST(RunBenchmark, EveryCellMatchesItsPrediction) {
  const BenchmarkReport r = run_benchmark(default_matrix(), builtin_scenarios());
  ASSERT_EQ(r.rows.size(), 48u);
  for (const BenchmarkRow &row : r.rows) {
    EXPECT_EQ(row.verdict, Verdict::MatchesPrediction) << row.scenario << " " << row.config << ": " << row.note;
    EXPECT_TRUE(row.round_trip) << row.scenario << " " << row.config;
  }
  EXPECT_TRUE(r.all_match());
  EXPECT_LT(r.seconds, 1.0);
}

TEST(RunBenchmark, EmptyInputs) {
  const BenchmarkReport r = run_benchmark(default_matrix(), {});
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.all_match());
  EXPECT_NE(format_report_text(r).find("0/0"), std::string::npos);
}

TEST(RunBenchmark, UnpredictedConfigDeviates) {
  MatcherConfig cfg;
  cfg.pipeline = Pipeline::TopDown;
  cfg.name_sim = NameSimKind::Lcs;
  const BenchmarkReport r = run_benchmark({{"topdown-lcs", cfg}}, builtin_scenarios());
  for (const BenchmarkRow &row : r.rows) {
    EXPECT_EQ(row.verdict, Verdict::Deviates);
    EXPECT_EQ(row.note, "no prediction");
    EXPECT_TRUE(row.round_trip);
  }
  EXPECT_FALSE(r.all_match());
}

TEST(RunBenchmark, PrecisionAndRecallAgainstGroundTruth) {
  const BenchmarkReport r = run_benchmark(default_matrix(), builtin_scenarios());
  for (const BenchmarkRow &row : r.rows) {
    EXPECT_GE(row.precision, 0.0);
    EXPECT_LE(row.precision, 1.0);
    EXPECT_GE(row.recall, 0.0);
    EXPECT_LE(row.recall, 1.0);
  }
  for (const BenchmarkRow &row : r.rows)
    if (row.scenario == "S1-ecore" && row.config == "twophase-bigram") {
      EXPECT_EQ(row.precision, 1.0);
      EXPECT_EQ(row.recall, 1.0);
    }
}

TEST(RunBenchmark, SerialAndParallelReportsAgree) {
  const auto configs = default_matrix();
  const auto scenarios = builtin_scenarios();
  const BenchmarkReport a = run_benchmark(configs, scenarios, Execution::Serial);
  const BenchmarkReport b = run_benchmark(configs, scenarios, Execution::Parallel);
  EXPECT_EQ(format_report_json(a), format_report_json(b));
  EXPECT_EQ(format_report_text(a), format_report_text(b));
}

TEST(FormatReport, JsonShape) {
  const auto j = nlohmann::json::parse(format_report_json(run_benchmark(default_matrix(), builtin_scenarios())));
  EXPECT_TRUE(j["allMatch"].get<bool>());
  ASSERT_EQ(j["rows"].size(), 48u);
  const auto &row = j["rows"][0];
  for (const char *key : {"scenario", "config", "verdict", "precision", "recall", "roundTrip", "note", "script"})
    EXPECT_TRUE(row.contains(key)) << key;
  EXPECT_EQ(row["verdict"], "MATCHES-PREDICTION");
}

TEST(FormatReport, TextSummaryLine) {
  const std::string text = format_report_text(run_benchmark(default_matrix(), builtin_scenarios()));
  EXPECT_NE(text.find("48/48 cells match the prediction"), std::string::npos);
}

class ExportTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mmc-export-" + std::to_string(getpid()) + "-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(ExportTest, WritesParseableFilesAndManifest) {
  const auto scenarios = builtin_scenarios();
  const auto files = export_scenarios(scenarios, dir_.string());
  EXPECT_EQ(files.size(), 25u);
  for (const Scenario &sc : scenarios) {
    EXPECT_TRUE(models_equivalent(load_model_file((dir_ / (sc.key() + "-old.xml")).string()), sc.old_model));
    EXPECT_TRUE(models_equivalent(load_model_file((dir_ / (sc.key() + "-new.xml")).string()), sc.new_model));
  }
  std::ifstream manifest(dir_ / "manifest.txt");
  std::string line;
  std::getline(manifest, line);
  EXPECT_EQ(line, "S1\tecore\tS1-ecore-old.xml\tS1-ecore-new.xml");
}

TEST_F(ExportTest, UnwritableDirectoryIsIoFailure) {
  std::ofstream(dir_.string()) << "plain file";
  try {
    export_scenarios(builtin_scenarios(), (dir_ / "sub").string());
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), Errc::IoFailure);
  }
  fs::remove(dir_);
}

} // namespace
} // namespace mmc
