// mmc: model matching and differencing front end.
//
//   mmc diff OLD NEW [--pipeline ...] [--name-sim ...] [--format text|json]
//   mmc bench run|list|export --dir DIR

#include "mmc/benchmark.hpp"
#include "mmc/diff.hpp"
#include "mmc/xml_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int exit_code(mmc::Errc code) {
  switch (code) {
  case mmc::Errc::InconsistentMatching:
  case mmc::Errc::UnresolvablePath:
  case mmc::Errc::InvariantViolation:
    return 2;
  default:
    return 1;
  }
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw mmc::Error(mmc::Errc::IoFailure, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Model matching and differencing"};
  app.require_subcommand(1);

  mmc::MatcherConfig cfg;
  std::string old_path, new_path, synonyms_path, format = "text";

  CLI::App *diff = app.add_subcommand("diff", "Print the edit script turning OLD into NEW");
  diff->add_option("old", old_path, "Old model document")->required();
  diff->add_option("new", new_path, "New model document")->required();
  std::string pipeline = "twophase", name_sim = "bigram", ref_policy = "strict";
  diff->add_option("--pipeline", pipeline, "topdown, fullscope or twophase")
      ->check(CLI::IsMember({"topdown", "fullscope", "twophase"}));
  diff->add_option("--name-sim", name_sim, "exact, lcs, bigram or semantic")
      ->check(CLI::IsMember({"exact", "lcs", "bigram", "semantic"}));
  diff->add_option("--threshold", cfg.threshold, "Minimum pair score")->check(CLI::Range(0.0, 1.0));
  diff->add_option("--synonyms", synonyms_path, "Synonym dictionary for --name-sim semantic");
  diff->add_option("--ref-policy", ref_policy, "strict or target-flexible")
      ->check(CLI::IsMember({"strict", "target-flexible"}));
  diff->add_flag("--exact-name-first", cfg.exact_name_first,
                 "Pair unique (metatype, name) elements before scoring");
  diff->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App *bench = app.add_subcommand("bench", "Benchmark scenarios");
  bench->require_subcommand(1);
  CLI::App *run = bench->add_subcommand("run", "Run the default configuration matrix");
  run->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  CLI::App *list = bench->add_subcommand("list", "List the builtin scenarios");
  std::string dir;
  CLI::App *exp = bench->add_subcommand("export", "Write scenario models and a manifest");
  exp->add_option("--dir", dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*diff) {
      cfg.pipeline = *mmc::parse_pipeline(pipeline);
      cfg.name_sim = *mmc::parse_name_sim(name_sim);
      cfg.edge_policy = *mmc::parse_edge_policy(ref_policy);
      if (!synonyms_path.empty())
        cfg.synonym_source = read_file(synonyms_path);
      cfg.validate();
      const mmc::Model old_model = mmc::load_model_file(old_path);
      const mmc::Model new_model = mmc::load_model_file(new_path);
      const mmc::EditScript script = mmc::diff_models(old_model, new_model, cfg);
      std::cout << mmc::format_script(script, format == "json" ? mmc::ScriptFormat::Json
                                                               : mmc::ScriptFormat::Text);
      return 0;
    }
    if (*run) {
      const mmc::BenchmarkReport report =
          mmc::run_benchmark(mmc::default_matrix(), mmc::builtin_scenarios());
      std::cout << (format == "json" ? mmc::format_report_json(report)
                                     : mmc::format_report_text(report));
      std::cerr << "matrix ran in " << report.seconds << " s\n";
      return report.all_match() ? 0 : 1;
    }
    if (*list) {
      for (const mmc::Scenario &sc : mmc::builtin_scenarios())
        std::cout << sc.key() << "\t" << mmc::element_count(sc.old_model) << " -> "
                  << mmc::element_count(sc.new_model) << " elements\t" << sc.description << "\n";
      return 0;
    }
    if (*exp) {
      const auto files = mmc::export_scenarios(mmc::builtin_scenarios(), dir);
      std::cout << "wrote " << files.size() << " files to " << dir << "\n";
      return 0;
    }
  } catch (const mmc::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
