#include "mmc/benchmark.hpp"

#include "mmc/canonical.hpp"
#include "mmc/similarity.hpp"
#include "mmc/xml_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace mmc {

std::string_view to_string(ScenarioId id) {
  switch (id) {
  case ScenarioId::S1: return "S1";
  case ScenarioId::S2: return "S2";
  case ScenarioId::S3: return "S3";
  case ScenarioId::S4: return "S4";
  case ScenarioId::S5: return "S5";
  case ScenarioId::S5b: return "S5b";
  }
  return "?";
}

std::string_view to_string(Flavor flavor) { return flavor == Flavor::Ecore ? "ecore" : "bpmn"; }

std::string_view to_string(Interpretation interpretation) {
  return interpretation == Interpretation::Move ? "move" : "rename";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::MatchesPrediction ? "MATCHES-PREDICTION" : "DEVIATES";
}

ConfigClass ConfigClass::of(const MatcherConfig &cfg) {
  return {cfg.pipeline, cfg.name_sim, cfg.edge_policy, cfg.exact_name_first};
}

std::string ConfigClass::str() const {
  std::string out = std::string(to_string(pipeline)) + "+" + std::string(to_string(name_sim)) +
                    "+" + std::string(to_string(edge_policy));
  if (exact_name_first)
    out += "+exact-name-first";
  return out;
}

std::string Scenario::key() const {
  return std::string(to_string(id)) + "-" + std::string(to_string(flavor));
}

namespace {

constexpr std::pair<EditKind, std::string_view> kShortKinds[] = {
    {EditKind::CreateElement, "Create"}, {EditKind::DeleteElement, "Delete"},
    {EditKind::MoveElement, "Move"},     {EditKind::RenameElement, "Rename"},
    {EditKind::UpdateAttribute, "Update"}, {EditKind::RetargetEdge, "Retarget"},
    {EditKind::CreateEdge, "CreateEdge"}, {EditKind::DeleteEdge, "DeleteEdge"},
};

std::string_view short_kind(EditKind kind) {
  for (const auto &[k, s] : kShortKinds)
    if (k == kind)
      return s;
  return "?";
}

/// Parses "Create shop; Move DomesticAnimal; DeleteEdge sequenceflow*4".
Outcome ops(std::string_view text) {
  Outcome out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view item = text.substr(start, end - start);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    start = end + 1;
    if (item.empty())
      continue;
    const std::size_t space = item.find(' ');
    const std::string_view kind = item.substr(0, space);
    std::string_view subject = item.substr(space + 1);
    int count = 1;
    if (auto star = subject.rfind('*'); star != std::string_view::npos) {
      count = std::stoi(std::string(subject.substr(star + 1)));
      subject = subject.substr(0, star);
    }
    auto it = std::find_if(std::begin(kShortKinds), std::end(kShortKinds),
                           [&](const auto &k) { return k.second == kind; });
    for (int i = 0; i < count; ++i)
      out.push_back({it->first, std::string(subject)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

const ConfigClass kTopDownBigram{Pipeline::TopDown, NameSimKind::Bigram, EdgePolicy::Strict,
                                 false};
const ConfigClass kTwoPhaseBigram{Pipeline::TwoPhase, NameSimKind::Bigram, EdgePolicy::Strict,
                                  false};
const ConfigClass kTwoPhaseSemantic{Pipeline::TwoPhase, NameSimKind::Semantic,
                                    EdgePolicy::Strict, true};
const ConfigClass kFullScopeFlexible{Pipeline::FullScope, NameSimKind::Bigram,
                                     EdgePolicy::TargetFlexible, true};

constexpr std::string_view kEString = "EString";

Attributes typed(std::string_view type) { return {{"type", std::string(type)}}; }

ModelBuilder ecore_base(bool in_shop, std::string_view cls, std::string_view attr) {
  ModelBuilder b(Metatype::EPackage, "de", "de");
  std::string parent = "de";
  if (in_shop) {
    b.add("de", Metatype::EPackage, "shop", "shop");
    parent = "shop";
  }
  b.add(parent, Metatype::EClass, std::string(cls), "da")
      .add("da", Metatype::EAttribute, std::string(attr), "nick", typed(kEString))
      .add("da", Metatype::EAttribute, "price", "price", typed("EDouble"));
  return b;
}

ModelBuilder bpmn_base(bool in_sub, std::string_view task) {
  ModelBuilder b(Metatype::Process, "Order", "order");
  std::string parent = "order";
  if (in_sub) {
    b.add("order", Metatype::SubProcess, "Send Order", "sub");
    parent = "sub";
  }
  b.add(parent, Metatype::StartEvent, "", "start")
      .add(parent, Metatype::Task, std::string(task), "dg")
      .add(parent, Metatype::EndEvent, "", "end")
      .flow(parent, "f1", "start", "dg")
      .flow(parent, "f2", "dg", "end");
  return b;
}

Model ecore_exchange(bool swapped) {
  auto cls = [](ModelBuilder &b, std::string_view pkg, std::string_view name,
                std::string_view id) {
    const std::string i(id);
    b.add(pkg, Metatype::EClass, std::string(name), i)
        .add(i, Metatype::EAttribute, "nickname", i + "_nick", typed(kEString))
        .add(i, Metatype::EAttribute, "price", i + "_price", typed("EDouble"));
  };
  ModelBuilder b(Metatype::EPackage, "de", "de");
  b.add("de", Metatype::EPackage, "core", "core").add("de", Metatype::EPackage, "shop", "shop");
  cls(b, swapped ? "shop" : "core", "DomesticAnimal", "da");
  cls(b, swapped ? "core" : "shop", "DomesticAnimalNew", "dan");
  return b.build();
}

Model bpmn_exchange(bool swapped) {
  ModelBuilder b(Metatype::Process, "Order", "order");
  b.add("order", Metatype::StartEvent, "", "start")
      .add("order", Metatype::SubProcess, "Left", "left")
      .add("order", Metatype::SubProcess, "Right", "right")
      .add("order", Metatype::EndEvent, "", "end")
      .add(swapped ? "right" : "left", Metatype::Task, "doSomething", "ds")
      .add(swapped ? "left" : "right", Metatype::Task, "doSomethingNew", "dsn")
      .flow("order", "f1", "start", "left")
      .flow("order", "f2", "left", "right")
      .flow("order", "f3", "right", "end");
  return b.build();
}

Model ecore_reference(std::string_view owner, std::string_view target, std::string_view id) {
  ModelBuilder b(Metatype::EPackage, "de", "de");
  b.add("de", Metatype::EClass, "DomesticAnimal", "da")
      .add("da", Metatype::EAttribute, "nickname", "nick", typed(kEString))
      .add("de", Metatype::EClass, "Owner", "owner_cls")
      .add("owner_cls", Metatype::EAttribute, "name", "owner_name", typed(kEString))
      .add("de", Metatype::EClass, "Person", "person")
      .add("person", Metatype::EAttribute, "name", "person_name", typed(kEString))
      .reference(owner, "owner", std::string(id), std::string(target));
  return b.build();
}

Model bpmn_flows(std::string_view f2_source, std::string_view f2_target) {
  ModelBuilder b(Metatype::Process, "Order", "order");
  b.add("order", Metatype::StartEvent, "", "start")
      .add("order", Metatype::Task, "Task1", "t1")
      .add("order", Metatype::Task, "Task2", "t2")
      .add("order", Metatype::Task, "Task3", "t3")
      .add("order", Metatype::EndEvent, "", "end")
      .flow("order", "f1", "start", "t1")
      .flow("order", "f2", std::string(f2_source), std::string(f2_target))
      .flow("order", "f3", "t2", "end")
      .flow("order", "f4", "t3", "end");
  return b.build();
}

void expect(Scenario &sc, std::initializer_list<ConfigClass> classes, std::string_view text) {
  for (const ConfigClass &c : classes)
    sc.expected[c] = ops(text);
}

Scenario make(ScenarioId id, Flavor flavor, std::string description, Model old_model,
              Model new_model) {
  Scenario sc;
  sc.id = id;
  sc.flavor = flavor;
  sc.description = std::move(description);
  sc.old_model = std::move(old_model);
  sc.new_model = std::move(new_model);
  return sc;
}

constexpr std::string_view kFlowRecreated =
    "Delete sequenceflow; DeleteEdge sequenceflow*2; Create sequenceflow; "
    "CreateEdge sequenceflow*2";
constexpr std::string_view kOwnerRecreated =
    "Delete owner; DeleteEdge owner; Create owner; CreateEdge owner";

std::vector<Scenario> ecore_scenarios() {
  const auto A = kTopDownBigram, B = kTwoPhaseBigram, C = kTwoPhaseSemantic,
             D = kFullScopeFlexible;
  std::vector<Scenario> out;

  Scenario s1 = make(ScenarioId::S1, Flavor::Ecore, "class DomesticAnimal moved into new package shop",
                     ecore_base(false, "DomesticAnimal", "nickname").build(),
                     ecore_base(true, "DomesticAnimal", "nickname").build());
  expect(s1, {A}, "Create shop; Create DomesticAnimal; Create nickname; Create price; "
                  "Delete DomesticAnimal; Delete nickname; Delete price");
  expect(s1, {B, C, D}, "Create shop; Move DomesticAnimal");
  out.push_back(std::move(s1));

  Scenario s2 = make(ScenarioId::S2, Flavor::Ecore, "DomesticAnimal renamed Pet, nickname renamed moniker",
                     ecore_base(false, "DomesticAnimal", "nickname").build(),
                     ecore_base(false, "Pet", "moniker").build());
  expect(s2, {A}, "Delete DomesticAnimal; Delete nickname; Delete price; Create Pet; "
                  "Create moniker; Create price");
  expect(s2, {B, D}, "Create Pet; Create moniker; Move price; Delete nickname; Delete DomesticAnimal");
  expect(s2, {C}, "Rename DomesticAnimal; Rename nickname");
  out.push_back(std::move(s2));

  Scenario s3 = make(ScenarioId::S3, Flavor::Ecore, "S1 and S2 combined",
                     ecore_base(false, "DomesticAnimal", "nickname").build(),
                     ecore_base(true, "Pet", "moniker").build());
  expect(s3, {A}, "Create shop; Create Pet; Create moniker; Create price; Delete price; "
                  "Delete nickname; Delete DomesticAnimal");
  expect(s3, {B, D}, "Create shop; Create Pet; Create moniker; Move price; Delete nickname; "
                     "Delete DomesticAnimal");
  expect(s3, {C}, "Create shop; Move DomesticAnimal; Rename DomesticAnimal; Rename nickname");
  out.push_back(std::move(s3));

  Scenario s4 = make(ScenarioId::S4, Flavor::Ecore,
                     "DomesticAnimal and DomesticAnimalNew exchange packages core and shop",
                     ecore_exchange(false), ecore_exchange(true));
  expect(s4, {A, B}, "Rename DomesticAnimal; Rename DomesticAnimalNew");
  expect(s4, {C, D}, "Move DomesticAnimal; Move DomesticAnimalNew");
  out.push_back(std::move(s4));

  Scenario s5 = make(ScenarioId::S5, Flavor::Ecore, "reference owner retargeted from Owner to Person",
                     ecore_reference("da", "owner_cls", "owner"),
                     ecore_reference("da", "person", "owner"));
  expect(s5, {A, B, C}, kOwnerRecreated);
  expect(s5, {D}, "Retarget owner");
  out.push_back(std::move(s5));

  Scenario s5b = make(ScenarioId::S5b, Flavor::Ecore,
                      "reference owner moved from DomesticAnimal to Person",
                      ecore_reference("da", "owner_cls", "owner"),
                      ecore_reference("person", "owner_cls", "owner_new"));
  expect(s5b, {A, B, C, D}, kOwnerRecreated);
  out.push_back(std::move(s5b));
  return out;
}

std::vector<Scenario> bpmn_scenarios() {
  const auto A = kTopDownBigram, B = kTwoPhaseBigram, C = kTwoPhaseSemantic,
             D = kFullScopeFlexible;
  constexpr std::string_view kRecreatedContent =
      "Create startevent; Create endevent; Create sequenceflow*2; CreateEdge sequenceflow*4; "
      "Delete startevent; Delete Deliver Goods; Delete endevent; Delete sequenceflow*2; "
      "DeleteEdge sequenceflow*4";
  std::vector<Scenario> out;

  Scenario s1 = make(ScenarioId::S1, Flavor::Bpmn, "process content moved into new subprocess Send Order",
                     bpmn_base(false, "Deliver Goods").build(),
                     bpmn_base(true, "Deliver Goods").build());
  expect(s1, {A}, "Create Send Order; Create Deliver Goods; " + std::string(kRecreatedContent));
  expect(s1, {B, C, D}, "Create Send Order; Move startevent; Move Deliver Goods; Move endevent; "
                        "Move sequenceflow*2");
  out.push_back(std::move(s1));

  Scenario s2 = make(ScenarioId::S2, Flavor::Bpmn, "task Deliver Goods renamed Send Items",
                     bpmn_base(false, "Deliver Goods").build(),
                     bpmn_base(false, "Send Items").build());
  expect(s2, {A, B}, "Delete Deliver Goods; Create Send Items; Delete sequenceflow*2; "
                     "DeleteEdge sequenceflow*4; Create sequenceflow*2; CreateEdge sequenceflow*4");
  expect(s2, {C}, "Rename Deliver Goods");
  expect(s2, {D}, "Create Send Items; Retarget sequenceflow; Delete Deliver Goods; " +
                      std::string(kFlowRecreated));
  out.push_back(std::move(s2));

  Scenario s3 = make(ScenarioId::S3, Flavor::Bpmn, "S1 and S2 combined",
                     bpmn_base(false, "Deliver Goods").build(),
                     bpmn_base(true, "Send Items").build());
  expect(s3, {A}, "Create Send Order; Create Send Items; " + std::string(kRecreatedContent));
  expect(s3, {B}, "Create Send Order; Create Send Items; Move startevent; Move endevent; "
                  "Delete Deliver Goods; Delete sequenceflow*2; DeleteEdge sequenceflow*4; "
                  "Create sequenceflow*2; CreateEdge sequenceflow*4");
  expect(s3, {C}, "Create Send Order; Move startevent; Move Deliver Goods; Move endevent; "
                  "Move sequenceflow*2; Rename Deliver Goods");
  expect(s3, {D}, "Create Send Order; Create Send Items; Move startevent; Move endevent; "
                  "Move sequenceflow; Retarget sequenceflow; Delete Deliver Goods; " +
                      std::string(kFlowRecreated));
  out.push_back(std::move(s3));

  Scenario s4 = make(ScenarioId::S4, Flavor::Bpmn,
                     "tasks doSomething and doSomethingNew exchange subprocesses Left and Right",
                     bpmn_exchange(false), bpmn_exchange(true));
  expect(s4, {A, B}, "Rename doSomething; Rename doSomethingNew");
  expect(s4, {C, D}, "Move doSomething; Move doSomethingNew");
  out.push_back(std::move(s4));

  Scenario s5 = make(ScenarioId::S5, Flavor::Bpmn, "sequence flow retargeted from Task2 to Task3",
                     bpmn_flows("t1", "t2"), bpmn_flows("t1", "t3"));
  expect(s5, {A, B, C}, kFlowRecreated);
  expect(s5, {D}, "Retarget sequenceflow");
  out.push_back(std::move(s5));

  Scenario s5b = make(ScenarioId::S5b, Flavor::Bpmn,
                      "sequence flow source changed from Task1 to Task3",
                      bpmn_flows("t1", "t2"), bpmn_flows("t3", "t2"));
  expect(s5b, {A, B, C, D}, kFlowRecreated);
  out.push_back(std::move(s5b));
  return out;
}

std::string subject_label(const CanonicalPath &path) {
  if (path.steps.empty())
    return {};
  const PathStep &step = path.steps.back();
  return is_named(step.type) ? step.name : std::string(xml_tag(step.type));
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

BenchmarkRow run_cell(const NamedConfig &nc, const Scenario &sc, Execution exec) {
  BenchmarkRow row;
  row.scenario = sc.key();
  row.config = nc.name;
  try {
    const ModelIndex io(sc.old_model);
    const ModelIndex in(sc.new_model);
    const Matching m = match_models(io, in, nc.config, exec);
    row.script = derive_edit_script(io, in, m);
    row.round_trip = models_equivalent(apply_edit_script(sc.old_model, row.script), sc.new_model);

    const ConfigClass cls = ConfigClass::of(nc.config);
    const Matching ref =
        reference_matching(sc, expected_interpretation(cls), nc.config.edge_policy);
    const auto derived_pairs = m.element_pairs();
    const auto ref_pairs = ref.element_pairs();
    std::size_t hits = 0;
    for (const ElementPair &p : derived_pairs)
      hits += ref.partner_of_old(p.old_node) == p.new_node;
    row.precision = ratio(hits, derived_pairs.size());
    row.recall = ratio(hits, ref_pairs.size());

    auto it = sc.expected.find(cls);
    const Outcome got = outcome_of(row.script);
    if (it == sc.expected.end()) {
      row.note = "no prediction";
    } else if (got != it->second) {
      row.note = "expected " + describe(it->second) + "; got " + describe(got);
    } else if (!row.round_trip) {
      row.note = "round-trip failed";
    } else {
      row.verdict = Verdict::MatchesPrediction;
    }
  } catch (const std::exception &e) {
    row.note = e.what();
  }
  return row;
}

} // namespace

Outcome outcome_of(const EditScript &script) {
  Outcome out;
  for (const EditOp &op : script.ops)
    out.push_back({op.kind, subject_label(op.subject)});
  std::sort(out.begin(), out.end());
  return out;
}

std::string describe(const Outcome &outcome) {
  std::string out;
  for (std::size_t i = 0; i < outcome.size();) {
    std::size_t j = i;
    while (j < outcome.size() && outcome[j] == outcome[i])
      ++j;
    if (!out.empty())
      out += "; ";
    out += std::string(short_kind(outcome[i].kind)) + " " + outcome[i].subject;
    if (j - i > 1)
      out += "*" + std::to_string(j - i);
    i = j;
  }
  return out.empty() ? "(none)" : out;
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> out = ecore_scenarios();
  for (Scenario &sc : bpmn_scenarios())
    out.push_back(std::move(sc));
  return out;
}

Interpretation expected_interpretation(const ConfigClass &cls) {
  return cls.exact_name_first && cls.pipeline != Pipeline::TopDown ? Interpretation::Move
                                                                   : Interpretation::Rename;
}

Matching reference_matching(const Scenario &sc, Interpretation interpretation,
                            EdgePolicy policy) {
  const ModelIndex io(sc.old_model);
  const ModelIndex in(sc.new_model);
  std::unordered_map<std::string, std::string> renamed;
  if (sc.id == ScenarioId::S4 && interpretation == Interpretation::Rename) {
    if (sc.flavor == Flavor::Ecore) {
      for (std::string suffix : {"", "_nick", "_price"}) {
        renamed["da" + suffix] = "dan" + suffix;
        renamed["dan" + suffix] = "da" + suffix;
      }
    } else {
      renamed = {{"ds", "dsn"}, {"dsn", "ds"}};
    }
  }
  std::set<std::string> unpaired;
  if (sc.id == ScenarioId::S5b || (sc.id == ScenarioId::S5 && policy == EdgePolicy::Strict))
    unpaired = {"owner", "f2"};

  Matching m(io.size(), in.size());
  for (std::size_t i = 0; i < io.size(); ++i) {
    std::string id = io.element(static_cast<int>(i)).id;
    if (unpaired.count(id))
      continue;
    if (auto it = renamed.find(id); it != renamed.end())
      id = it->second;
    if (const int n = in.find_id(id); n != kNoNode)
      m.pair(static_cast<int>(i), n);
  }
  MatcherConfig cfg;
  cfg.edge_policy = policy;
  return match_edges(io, in, std::move(m), cfg);
}

std::vector<NamedConfig> default_matrix() {
  std::vector<NamedConfig> out;
  auto add = [&](std::string name, const ConfigClass &cls) {
    MatcherConfig cfg;
    cfg.pipeline = cls.pipeline;
    cfg.name_sim = cls.name_sim;
    cfg.edge_policy = cls.edge_policy;
    cfg.exact_name_first = cls.exact_name_first;
    out.push_back({std::move(name), std::move(cfg)});
  };
  add("topdown-bigram", kTopDownBigram);
  add("twophase-bigram", kTwoPhaseBigram);
  add("twophase-semantic", kTwoPhaseSemantic);
  add("fullscope-bigram-flexible", kFullScopeFlexible);
  return out;
}

bool BenchmarkReport::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchmarkRow &r) {
    return r.verdict == Verdict::MatchesPrediction;
  });
}

BenchmarkReport run_benchmark(const std::vector<NamedConfig> &configs,
                              const std::vector<Scenario> &scenarios, Execution exec) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t cells = configs.size() * scenarios.size();
  BenchmarkReport report;
  report.rows.resize(cells);
  const long n = static_cast<long>(cells);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < n; ++c) {
      const auto i = static_cast<std::size_t>(c);
      report.rows[i] = run_cell(configs[i % configs.size()], scenarios[i / configs.size()], exec);
    }
  } else {
    for (std::size_t i = 0; i < cells; ++i)
      report.rows[i] = run_cell(configs[i % configs.size()], scenarios[i / configs.size()], exec);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report_text(const BenchmarkReport &report) {
  std::size_t wc = 8, wk = 6;
  for (const BenchmarkRow &r : report.rows) {
    wc = std::max(wc, r.scenario.size());
    wk = std::max(wk, r.config.size());
  }
  std::ostringstream out;
  char buf[64];
  auto pad = [](const std::string &s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  out << pad("scenario", wc) << "  " << pad("config", wk)
      << "  verdict              prec  recall  round-trip  ops\n";
  std::size_t matching = 0;
  for (const BenchmarkRow &r : report.rows) {
    matching += r.verdict == Verdict::MatchesPrediction;
    std::snprintf(buf, sizeof buf, "%-19s  %.2f  %.2f    %-10s  ",
                  std::string(to_string(r.verdict)).c_str(), r.precision, r.recall,
                  r.round_trip ? "ok" : "FAILED");
    out << pad(r.scenario, wc) << "  " << pad(r.config, wk) << "  " << buf
        << describe(outcome_of(r.script)) << "\n";
    if (!r.note.empty())
      out << "    note: " << r.note << "\n";
  }
  out << matching << "/" << report.rows.size() << " cells match the prediction\n";
  return out.str();
}

std::string format_report_json(const BenchmarkReport &report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const BenchmarkRow &r : report.rows) {
    rows.push_back({
        {"scenario", r.scenario},
        {"config", r.config},
        {"verdict", to_string(r.verdict)},
        {"precision", r.precision},
        {"recall", r.recall},
        {"roundTrip", r.round_trip},
        {"note", r.note},
        {"script", nlohmann::ordered_json::parse(format_script(r.script, ScriptFormat::Json))},
    });
  }
  nlohmann::ordered_json out = {{"rows", rows}, {"allMatch", report.all_match()}};
  return out.dump(2) + "\n";
}

std::vector<std::string> export_scenarios(const std::vector<Scenario> &scenarios,
                                          const std::string &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw Error(Errc::IoFailure, "cannot create " + dir + ": " + ec.message());
  auto write = [&](const std::string &name, const std::string &content) {
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    f.close();
    if (!f)
      throw Error(Errc::IoFailure, "cannot write " + path.string());
  };
  std::vector<std::string> written;
  std::string manifest;
  for (const Scenario &sc : scenarios) {
    const std::string old_file = sc.key() + "-old.xml";
    const std::string new_file = sc.key() + "-new.xml";
    write(old_file, serialize_model(sc.old_model));
    write(new_file, serialize_model(sc.new_model));
    written.push_back(old_file);
    written.push_back(new_file);
    manifest += std::string(to_string(sc.id)) + "\t" + std::string(to_string(sc.flavor)) + "\t" +
                old_file + "\t" + new_file + "\n";
  }
  write("manifest.txt", manifest);
  written.push_back("manifest.txt");
  return written;
}

} // namespace mmc
