#pragma once

#include "mmc/diff.hpp"
#include "mmc/matching.hpp"
#include "mmc/model.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmc {

enum class ScenarioId { S1, S2, S3, S4, S5, S5b };
enum class Flavor { Ecore, Bpmn };
enum class Interpretation { Move, Rename };

std::string_view to_string(ScenarioId id);
std::string_view to_string(Flavor flavor);
std::string_view to_string(Interpretation interpretation);

/// The configuration traits a prediction depends on.
struct ConfigClass {
  Pipeline pipeline = Pipeline::TwoPhase;
  NameSimKind name_sim = NameSimKind::Bigram;
  EdgePolicy edge_policy = EdgePolicy::Strict;
  bool exact_name_first = false;

  static ConfigClass of(const MatcherConfig &cfg);
  std::string str() const;
  friend auto operator<=>(const ConfigClass &, const ConfigClass &) = default;
};

/// One expected op: its kind and the label of its subject (the last path
/// step without ordinal, e.g. "DomesticAnimal" or "sequenceflow").
struct ExpectedOp {
  EditKind kind = EditKind::CreateElement;
  std::string subject;
  friend auto operator<=>(const ExpectedOp &, const ExpectedOp &) = default;
};

/// Sorted multiset of expected ops.
using Outcome = std::vector<ExpectedOp>;

/// Reduces a script to its sorted (kind, subject label) multiset.
Outcome outcome_of(const EditScript &script);
std::string describe(const Outcome &outcome);

struct Scenario {
  ScenarioId id = ScenarioId::S1;
  Flavor flavor = Flavor::Ecore;
  std::string description;
  Model old_model;
  Model new_model;
  std::map<ConfigClass, Outcome> expected;

  /// "S1-ecore"
  std::string key() const;
};

/// The twelve builtin scenarios, S1..S5b for each flavor.
std::vector<Scenario> builtin_scenarios();

/// Ground-truth correspondence. `interpretation` matters only for S4 and
/// `policy` only for S5.
Matching reference_matching(const Scenario &sc, Interpretation interpretation,
                            EdgePolicy policy = EdgePolicy::Strict);

/// The interpretation a config class is expected to produce for S4.
Interpretation expected_interpretation(const ConfigClass &cls);

struct NamedConfig {
  std::string name;
  MatcherConfig config;
};

/// topdown-bigram, twophase-bigram, twophase-semantic and
/// fullscope-bigram-flexible.
std::vector<NamedConfig> default_matrix();

enum class Verdict { MatchesPrediction, Deviates };
std::string_view to_string(Verdict verdict);

struct BenchmarkRow {
  std::string scenario;
  std::string config;
  EditScript script;
  Verdict verdict = Verdict::Deviates;
  double precision = 0;
  double recall = 0;
  bool round_trip = false;
  std::string note;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows; // ordered by (scenario, config)
  double seconds = 0;

  bool all_match() const;
};

/// Runs every (scenario, config) cell. Per-cell failures are recorded in the
/// row, never thrown.
BenchmarkReport run_benchmark(const std::vector<NamedConfig> &configs,
                              const std::vector<Scenario> &scenarios,
                              Execution exec = Execution::Parallel);

std::string format_report_text(const BenchmarkReport &report);
std::string format_report_json(const BenchmarkReport &report);

/// Writes "<key>-old.xml" and "<key>-new.xml" per scenario plus
/// manifest.txt. Returns the written file names. Throws Error(IoFailure).
std::vector<std::string> export_scenarios(const std::vector<Scenario> &scenarios,
                                          const std::string &dir);

} // namespace mmc
