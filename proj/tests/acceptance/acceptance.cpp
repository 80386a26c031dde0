// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "mmc/benchmark.hpp"
#include "mmc/canonical.hpp"
#include "mmc/similarity.hpp"
#include "mmc/xml_io.hpp"

#include "fuzz.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace mmc;
namespace fs = std::filesystem;

constexpr int kFuzz = 1000;

/// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  int checks = 0;

  void expect(bool ok, const std::string &what) {
    ++checks;
    if (!ok)
      failures.push_back(what);
  }
};

const Scenario &scenario(const std::vector<Scenario> &all, std::string_view key) {
  for (const Scenario &sc : all)
    if (sc.key() == key)
      return sc;
  throw std::logic_error("no scenario " + std::string(key));
}

MatcherConfig config(Pipeline p, NameSimKind sim, bool enf = false,
                     EdgePolicy policy = EdgePolicy::Strict) {
  MatcherConfig cfg;
  cfg.pipeline = p;
  cfg.name_sim = sim;
  cfg.exact_name_first = enf;
  cfg.edge_policy = policy;
  return cfg;
}

std::size_t count(const EditScript &s, EditKind kind) {
  return std::count_if(s.ops.begin(), s.ops.end(), [&](const EditOp &op) { return op.kind == kind; });
}

std::string label(const Scenario &sc, const MatcherConfig &cfg) {
  return sc.key() + " " + ConfigClass::of(cfg).str();
}

const Pipeline kPipelines[] = {Pipeline::TopDown, Pipeline::FullScope, Pipeline::TwoPhase};

void prediction_matrix(Check &c) {
  const auto all = builtin_scenarios();
  const BenchmarkReport report = run_benchmark(default_matrix(), all);
  c.expect(report.all_match(), "benchmark matrix has deviating cells");
  c.expect(report.seconds < 1.0, "matrix took " + std::to_string(report.seconds) + " s");

  for (std::string_view flavor : {"ecore", "bpmn"}) {
    const std::string f(flavor);

    const Scenario &s1 = scenario(all, "S1-" + f);
    const MatcherConfig top = config(Pipeline::TopDown, NameSimKind::Bigram);
    const EditScript s1_top = diff_models(s1.old_model, s1.new_model, top);
    c.expect(count(s1_top, EditKind::MoveElement) == 0 && count(s1_top, EditKind::DeleteElement) > 0 &&
                 count(s1_top, EditKind::CreateElement) > 1,
             label(s1, top) + ": expected delete and create");
    const MatcherConfig two = config(Pipeline::TwoPhase, NameSimKind::Bigram);
    const EditScript s1_two = diff_models(s1.old_model, s1.new_model, two);
    c.expect(count(s1_two, EditKind::CreateElement) == 1 && count(s1_two, EditKind::DeleteElement) == 0 &&
                 count(s1_two, EditKind::MoveElement) == (f == "bpmn" ? 5u : 1u) &&
                 count(s1_two, EditKind::MoveElement) + 1 == s1_two.size(),
             label(s1, two) + ": expected one create plus moves");

    const Scenario &s2 = scenario(all, "S2-" + f);
    for (Pipeline p : kPipelines) {
      for (NameSimKind sim : {NameSimKind::Bigram, NameSimKind::Lcs}) {
        const MatcherConfig cfg = config(p, sim);
        const EditScript s = diff_models(s2.old_model, s2.new_model, cfg);
        c.expect(count(s, EditKind::RenameElement) == 0 && count(s, EditKind::DeleteElement) > 0 &&
                     count(s, EditKind::CreateElement) > 0,
                 label(s2, cfg) + ": expected delete and create");
      }
      const MatcherConfig sem = config(p, NameSimKind::Semantic);
      const EditScript s = diff_models(s2.old_model, s2.new_model, sem);
      c.expect(!s.empty() && count(s, EditKind::RenameElement) == s.size(), label(s2, sem) + ": expected renames only");
    }

    const Scenario &s3 = scenario(all, "S3-" + f);
    const MatcherConfig sem = config(Pipeline::TwoPhase, NameSimKind::Semantic, true);
    const EditScript s3_sem = diff_models(s3.old_model, s3.new_model, sem);
    c.expect(count(s3_sem, EditKind::MoveElement) > 0 && count(s3_sem, EditKind::RenameElement) > 0 &&
                 count(s3_sem, EditKind::DeleteElement) == 0,
             label(s3, sem) + ": expected move and rename");
    const EditScript s3_top = diff_models(s3.old_model, s3.new_model, top);
    c.expect(count(s3_top, EditKind::MoveElement) == 0 && count(s3_top, EditKind::RenameElement) == 0 &&
                 count(s3_top, EditKind::DeleteElement) > 0,
             label(s3, top) + ": expected delete and create");

    const Scenario &s4 = scenario(all, "S4-" + f);
    auto interpretation_is = [&](const MatcherConfig &cfg, Interpretation in) {
      const ModelIndex io(s4.old_model), inew(s4.new_model);
      return match_models(io, inew, cfg).element_pairs() == reference_matching(s4, in).element_pairs();
    };
    c.expect(interpretation_is(top, Interpretation::Rename), label(s4, top) + ": expected rename interpretation");
    for (Pipeline p : {Pipeline::FullScope, Pipeline::TwoPhase}) {
      const MatcherConfig cfg = config(p, NameSimKind::Bigram, true);
      c.expect(interpretation_is(cfg, Interpretation::Move), label(s4, cfg) + ": expected move interpretation");
    }

    const Scenario &s5 = scenario(all, "S5-" + f);
    const Scenario &s5b = scenario(all, "S5b-" + f);
    for (Pipeline p : kPipelines)
      for (bool enf : {false, true}) {
        const MatcherConfig strict = config(p, NameSimKind::Bigram, enf);
        const MatcherConfig flex = config(p, NameSimKind::Bigram, enf, EdgePolicy::TargetFlexible);
        const EditScript a = diff_models(s5.old_model, s5.new_model, strict);
        c.expect(count(a, EditKind::RetargetEdge) == 0 && count(a, EditKind::DeleteElement) == 1 &&
                     count(a, EditKind::CreateElement) == 1,
                 label(s5, strict) + ": expected delete and create");
        const EditScript b = diff_models(s5.old_model, s5.new_model, flex);
        c.expect(b.size() == 1 && b.ops[0].kind == EditKind::RetargetEdge, label(s5, flex) + ": expected one retarget");
        for (const MatcherConfig &cfg : {strict, flex}) {
          const EditScript s = diff_models(s5b.old_model, s5b.new_model, cfg);
          c.expect(count(s, EditKind::RetargetEdge) == 0 && count(s, EditKind::DeleteElement) == 1 &&
                       count(s, EditKind::CreateElement) == 1,
                   label(s5b, cfg) + ": expected delete and create");
        }
      }
  }
}

void round_trip(Check &c) {
  const auto all = builtin_scenarios();
  for (const BenchmarkRow &row : run_benchmark(default_matrix(), all).rows)
    c.expect(row.round_trip, row.scenario + " " + row.config + ": round-trip failed");

  testing::Rng rng(2024);
  const auto matrix = default_matrix();
  for (int i = 0; i < kFuzz; ++i) {
    const Model a = testing::random_model(rng, 50);
    const Model b = testing::random_edits(rng, a, 10, 50);
    for (const NamedConfig &nc : matrix) {
      try {
        const EditScript s = diff_models(a, b, nc.config);
        c.expect(models_equivalent(apply_edit_script(a, s), b),
                 "fuzz pair " + std::to_string(i) + " " + nc.name + ": not equivalent");
      } catch (const std::exception &e) {
        c.expect(false, "fuzz pair " + std::to_string(i) + " " + nc.name + ": " + e.what());
      }
    }
  }
}

void similarity_oracles(Check &c) {
  auto near = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  c.expect(near(testing::brute_lcs_sim("nickname", "moniker"), 8.0 / 15.0), "oracle lcs nickname/moniker");
  c.expect(near(lcs_sim("nickname", "moniker"), 8.0 / 15.0), "lcs nickname/moniker");
  const std::tuple<const char *, const char *, double> pinned[] = {
      {"nickname", "moniker", 2.0 / 13.0},
      {"DomesticAnimal", "DomesticAnimalNew", 26.0 / 29.0},
      {"Deliver Goods", "Send Items", 0.0}};
  for (const auto &[a, b, v] : pinned) {
    c.expect(near(testing::brute_bigram_sim(a, b), v), std::string("oracle bigram ") + a);
    c.expect(near(bigram_sim(a, b), v), std::string("bigram ") + a);
  }
  testing::Rng rng(99);
  for (int i = 0; i < kFuzz; ++i) {
    const std::string a = testing::random_string(rng, 12, "abcdeAB _");
    const std::string b = testing::random_string(rng, 12, "abcdeAB _");
    c.expect(near(lcs_sim(a, b), testing::brute_lcs_sim(a, b)), "lcs '" + a + "' '" + b + "'");
    c.expect(near(bigram_sim(a, b), testing::brute_bigram_sim(a, b)), "bigram '" + a + "' '" + b + "'");
  }
}

void matching_invariants(Check &c) {
  testing::Rng rng(7);
  for (int i = 0; i < kFuzz; ++i) {
    const std::string it = "fuzz pair " + std::to_string(i);
    const Model a = testing::random_model(rng, 50);
    const Model b = testing::random_edits(rng, a, 10, 50);
    const Model same = testing::reshuffled(rng, a, false);
    const ModelIndex ia(a), ib(b), is(same);
    for (Pipeline p : kPipelines) {
      const MatcherConfig cfg = config(p, NameSimKind::Bigram, i % 2 == 0);
      const Matching m = match_models(ia, ib, cfg);
      const auto v = matching_violations(ia, ib, m);
      c.expect(v.empty(), it + " " + std::string(to_string(p)) + ": " + (v.empty() ? "" : v.front()));
      c.expect(m == match_models(ia, ib, cfg, Execution::Serial), it + ": nondeterministic");
      c.expect(match_models(ia, is, cfg).pair_count() == ia.size(), it + ": identity incomplete");
    }
    const MatcherConfig cfg = config(Pipeline::TopDown, NameSimKind::Bigram);
    const Matching top = match_top_down(ia, ib, cfg);
    const Matching two = match_two_phase(ia, ib, cfg);
    for (const ElementPair &p : top.element_pairs())
      c.expect(two.partner_of_old(p.old_node) == p.new_node, it + ": topdown pair missing from twophase");
  }
}

void format_round_trip(Check &c) {
  auto fixpoint = [&](const Model &m, const std::string &what) {
    const std::string once = serialize_model(m);
    try {
      const Model back = parse_model(once);
      c.expect(serialize_model(back) == once && models_equivalent(back, m), what);
    } catch (const std::exception &e) {
      c.expect(false, what + ": " + e.what());
    }
  };
  const auto all = builtin_scenarios();
  for (const Scenario &sc : all) {
    fixpoint(sc.old_model, sc.key() + " old");
    fixpoint(sc.new_model, sc.key() + " new");
  }
  testing::Rng rng(5);
  for (int i = 0; i < kFuzz; ++i)
    fixpoint(testing::random_model(rng, 50), "fuzz model " + std::to_string(i));

  const fs::path dir = fs::temp_directory_path() / ("mmc-acceptance-export-" + std::to_string(getpid()));
  fs::remove_all(dir);
  export_scenarios(all, dir.string());
  for (const Scenario &sc : all) {
    c.expect(models_equivalent(load_model_file((dir / (sc.key() + "-old.xml")).string()), sc.old_model),
             sc.key() + " old export");
    c.expect(models_equivalent(load_model_file((dir / (sc.key() + "-new.xml")).string()), sc.new_model),
             sc.key() + " new export");
  }
  fs::remove_all(dir);
}

int run_cli(const std::string &args, std::string *out = nullptr) {
  FILE *pipe = popen((std::string(MMC_CLI_PATH) + " " + args + " 2>/dev/null").c_str(), "r");
  if (!pipe)
    return -1;
  std::string text;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    text.append(buf, n);
  const int status = pclose(pipe);
  if (out)
    *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void cli_contract(Check &c) {
  const fs::path dir = fs::temp_directory_path() / ("mmc-acceptance-cli-" + std::to_string(getpid()));
  fs::remove_all(dir);
  c.expect(run_cli("bench export --dir " + dir.string()) == 0, "bench export");
  const std::string ecore = (dir / "S1-ecore-old.xml").string();
  const std::string ecore_new = (dir / "S1-ecore-new.xml").string();
  const std::string bpmn = (dir / "S1-bpmn-old.xml").string();
  std::ofstream(dir / "broken.xml") << "<epackage name=\"p\">";
  std::ofstream(dir / "short.txt") << "solo\n";

  std::string out;
  c.expect(run_cli("diff " + ecore + " " + ecore_new, &out) == 0 && !out.empty(), "diff exits 0");
  c.expect(run_cli("diff " + ecore + " " + ecore, &out) == 0 && out.empty(), "identical diff exits 0");
  c.expect(run_cli("diff /nonexistent.xml " + ecore) == 1, "missing file exits 1");
  c.expect(run_cli("diff " + (dir / "broken.xml").string() + " " + ecore) == 1, "malformed document exits 1");
  c.expect(run_cli("diff " + ecore + " " + bpmn) == 1, "root mismatch exits 1");
  c.expect(run_cli("diff --name-sim semantic --synonyms " + (dir / "short.txt").string() + " " + ecore + " " +
                   ecore_new) == 1,
           "bad dictionary exits 1");
  c.expect(run_cli("diff --pipeline sideways " + ecore + " " + ecore_new) == 1, "bad option exits 1");
  c.expect(run_cli("") == 1, "missing subcommand exits 1");
  c.expect(run_cli("bench run", &out) == 0, "bench run exits 0");
  c.expect(run_cli("bench list", &out) == 0 && std::count(out.begin(), out.end(), '\n') == 12, "bench list");
  fs::remove_all(dir);
}

} // namespace

int main() {
  const std::pair<const char *, std::function<void(Check &)>> criteria[] = {
      {"prediction matrix", prediction_matrix},
      {"round-trip patching", round_trip},
      {"similarity oracles", similarity_oracles},
      {"matching invariants", matching_invariants},
      {"format round-trip", format_round_trip},
      {"CLI contract", cli_contract},
  };
  int failed = 0;
  int n = 0;
  for (const auto &[name, fn] : criteria) {
    ++n;
    Check c;
    try {
      fn(c);
    } catch (const std::exception &e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = c.failures.empty();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << name << " (" << c.checks
              << " checks)\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i)
      std::cout << "    " << c.failures[i] << "\n";
    if (!ok)
      ++failed;
  }
  return failed == 0 ? 0 : 1;
}
