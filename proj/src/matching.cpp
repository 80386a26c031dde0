#include "mmc/matching.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace mmc {

namespace {

// Below this many scored pairs the OpenMP region costs more than it saves.
constexpr std::size_t kParallelCutoff = 1024;

double dice_of_sibling_types(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node) {
  auto profile = [](const ModelIndex &m, int node) {
    std::array<int, kMetatypeCount> counts{};
    const int parent = m[node].parent;
    if (parent == kNoNode)
      return counts;
    for (int s : m[parent].children)
      if (s != node)
        ++counts[static_cast<std::size_t>(m.type(s))];
    return counts;
  };
  const auto pa = profile(a, a_node);
  const auto pb = profile(b, b_node);
  int common = 0, total = 0;
  for (std::size_t t = 0; t < pa.size(); ++t) {
    common += std::min(pa[t], pb[t]);
    total += pa[t] + pb[t];
  }
  return total == 0 ? 1.0 : 2.0 * common / total;
}

double parent_name_sim(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                       const NameSimilarity &sim) {
  const int pa = a[a_node].parent;
  const int pb = b[b_node].parent;
  if (pa == kNoNode || pb == kNoNode)
    return 0.0;
  return sim(a.name(pa), b.name(pb));
}

double member_sim(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                  const NameSimilarity &sim) {
  if (a.type(a_node) != b.type(b_node))
    return 0.0;
  if (!is_named(a.type(a_node)))
    return 1.0;
  return sim(a.name(a_node), b.name(b_node));
}

// Soft Dice over children (metatype, name), attribute entries and the
// parent: children pair greedily by name similarity, attributes count when
// equal, the parent contributes its name similarity.
double named_context(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                     const NameSimilarity &sim) {
  const Element &ea = a.element(a_node);
  const Element &eb = b.element(b_node);
  const auto &ka = a[a_node].children;
  const auto &kb = b[b_node].children;
  const bool pa = a[a_node].parent != kNoNode;
  const bool pb = b[b_node].parent != kNoNode;
  const std::size_t size = ka.size() + kb.size() + ea.attributes.size() + eb.attributes.size() +
                           (pa ? 1 : 0) + (pb ? 1 : 0);
  if (size == 0)
    return 1.0;

  double common = 0;
  for (const auto &[key, value] : ea.attributes)
    if (auto it = eb.attributes.find(key); it != eb.attributes.end() && it->second == value)
      common += 1;

  std::vector<bool> used(kb.size(), false);
  for (int ca : ka) {
    double best = 0;
    std::size_t best_j = kb.size();
    for (std::size_t j = 0; j < kb.size(); ++j) {
      if (used[j])
        continue;
      const double s = member_sim(a, ca, b, kb[j], sim);
      if (s > best) {
        best = s;
        best_j = j;
      }
    }
    if (best_j < kb.size()) {
      used[best_j] = true;
      common += best;
    }
  }

  if (pa && pb)
    common += parent_name_sim(a, a_node, b, b_node, sim);
  return 2.0 * common / static_cast<double>(size);
}

double endpoint_sim(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                    const NameSimilarity &sim) {
  double total = 0;
  int roles = 0;
  for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
    if (!has_edge_role(a.type(a_node), role))
      continue;
    ++roles;
    const int ta = a.endpoint(a_node, role);
    const int tb = b.endpoint(b_node, role);
    if (ta != kNoNode && tb != kNoNode)
      total += member_sim(a, ta, b, tb, sim);
  }
  return roles == 0 ? 1.0 : total / roles;
}

// Events and flows have no name: parent name similarity, sibling metatype
// profile and, for flows, endpoint similarity, averaged.
double unnamed_context(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                       const NameSimilarity &sim) {
  double sum = parent_name_sim(a, a_node, b, b_node, sim) +
               dice_of_sibling_types(a, a_node, b, b_node);
  int parts = 2;
  if (is_edge_bearing(a.type(a_node))) {
    sum += endpoint_sim(a, a_node, b, b_node, sim);
    ++parts;
  }
  return sum / parts;
}

bool parents_correspond(const ModelIndex &old_model, int o, const ModelIndex &new_model, int n,
                        const Matching &m) {
  const int op = old_model[o].parent;
  const int np = new_model[n].parent;
  if (op == kNoNode || np == kNoNode)
    return op == np;
  return m.partner_of_old(op) == np;
}

// Greedy selection by descending score with (old, new) document order as the
// tie-break; inside a group of equal scores, pairs whose parents already
// correspond go first.
std::vector<ElementPair> select_greedy(std::vector<Candidate> cands, const ModelIndex &old_model,
                                       const ModelIndex &new_model, Matching &m) {
  std::sort(cands.begin(), cands.end(), [](const Candidate &x, const Candidate &y) {
    if (x.score != y.score)
      return x.score > y.score;
    if (x.old_node != y.old_node)
      return x.old_node < y.old_node;
    return x.new_node < y.new_node;
  });
  std::vector<ElementPair> added;
  for (std::size_t begin = 0; begin < cands.size();) {
    std::size_t end = begin;
    while (end < cands.size() && cands[end].score == cands[begin].score)
      ++end;
    for (;;) {
      std::size_t chosen = end, fallback = end;
      for (std::size_t i = begin; i < end; ++i) {
        const Candidate &c = cands[i];
        if (!m.old_free(c.old_node) || !m.new_free(c.new_node))
          continue;
        if (parents_correspond(old_model, c.old_node, new_model, c.new_node, m)) {
          chosen = i;
          break;
        }
        if (fallback == end)
          fallback = i;
      }
      if (chosen == end)
        chosen = fallback;
      if (chosen == end)
        break;
      m.pair(cands[chosen].old_node, cands[chosen].new_node);
      added.push_back({cands[chosen].old_node, cands[chosen].new_node});
    }
    begin = end;
  }
  return added;
}

Matching roots_only(const ModelIndex &old_model, const ModelIndex &new_model) {
  if (old_model.type(0) != new_model.type(0))
    throw Error(Errc::MetatypeMismatch,
                "roots differ: " + std::string(display_name(old_model.type(0))) + " vs " +
                    std::string(display_name(new_model.type(0))));
  Matching m(old_model.size(), new_model.size());
  m.pair(0, 0);
  return m;
}

void exact_name_prepass(const ModelIndex &old_model, const ModelIndex &new_model, Matching &m) {
  using Key = std::pair<Metatype, std::string>;
  auto census = [](const ModelIndex &model) {
    std::map<Key, std::pair<int, int>> seen; // key -> (count, node)
    for (std::size_t i = 1; i < model.size(); ++i) {
      const int node = static_cast<int>(i);
      if (!is_named(model.type(node)))
        continue;
      auto &slot = seen[{model.type(node), model.name(node)}];
      ++slot.first;
      slot.second = node;
    }
    return seen;
  };
  const auto in_old = census(old_model);
  const auto in_new = census(new_model);
  std::vector<ElementPair> unique;
  for (const auto &[key, old_slot] : in_old) {
    auto it = in_new.find(key);
    if (old_slot.first == 1 && it != in_new.end() && it->second.first == 1)
      unique.push_back({old_slot.second, it->second.second});
  }
  std::sort(unique.begin(), unique.end(),
            [](const ElementPair &x, const ElementPair &y) { return x.old_node < y.old_node; });
  for (const ElementPair &p : unique)
    if (m.old_free(p.old_node) && m.new_free(p.new_node))
      m.pair(p.old_node, p.new_node);
}

void descend_top_down(const ModelIndex &old_model, const ModelIndex &new_model,
                      const MatcherConfig &cfg, const NameSimilarity &sim, Matching &m) {
  std::set<int> pending;
  for (const ElementPair &p : m.element_pairs())
    pending.insert(p.old_node);
  while (!pending.empty()) {
    const int o = *pending.begin();
    pending.erase(pending.begin());
    const int n = m.partner_of_old(o);
    std::vector<Candidate> cands;
    for (int co : old_model[o].children) {
      if (!m.old_free(co))
        continue;
      for (int cn : new_model[n].children) {
        if (!m.new_free(cn) || old_model.type(co) != new_model.type(cn))
          continue;
        const double s = score_pair(old_model, co, new_model, cn, cfg, sim);
        if (s >= cfg.threshold)
          cands.push_back({s, co, cn});
      }
    }
    for (const ElementPair &p : select_greedy(std::move(cands), old_model, new_model, m))
      pending.insert(p.old_node);
  }
}

void extend_full_scope(const ModelIndex &old_model, const ModelIndex &new_model,
                       const MatcherConfig &cfg, const NameSimilarity &sim, Execution exec,
                       Matching &m) {
  std::vector<int> olds, news;
  for (std::size_t i = 1; i < old_model.size(); ++i)
    if (m.old_free(static_cast<int>(i)))
      olds.push_back(static_cast<int>(i));
  for (std::size_t i = 1; i < new_model.size(); ++i)
    if (m.new_free(static_cast<int>(i)))
      news.push_back(static_cast<int>(i));
  select_greedy(score_candidates(old_model, new_model, olds, news, cfg, sim, exec), old_model,
                new_model, m);
}

} // namespace

std::string_view to_string(Pipeline p) {
  switch (p) {
  case Pipeline::TopDown: return "topdown";
  case Pipeline::FullScope: return "fullscope";
  case Pipeline::TwoPhase: return "twophase";
  }
  return "?";
}

std::string_view to_string(NameSimKind k) {
  switch (k) {
  case NameSimKind::Exact: return "exact";
  case NameSimKind::Lcs: return "lcs";
  case NameSimKind::Bigram: return "bigram";
  case NameSimKind::Semantic: return "semantic";
  }
  return "?";
}

std::string_view to_string(EdgePolicy p) {
  return p == EdgePolicy::Strict ? "strict" : "target-flexible";
}

std::optional<Pipeline> parse_pipeline(std::string_view s) {
  for (Pipeline p : {Pipeline::TopDown, Pipeline::FullScope, Pipeline::TwoPhase})
    if (to_string(p) == s)
      return p;
  return std::nullopt;
}

std::optional<NameSimKind> parse_name_sim(std::string_view s) {
  for (NameSimKind k :
       {NameSimKind::Exact, NameSimKind::Lcs, NameSimKind::Bigram, NameSimKind::Semantic})
    if (to_string(k) == s)
      return k;
  return std::nullopt;
}

std::optional<EdgePolicy> parse_edge_policy(std::string_view s) {
  for (EdgePolicy p : {EdgePolicy::Strict, EdgePolicy::TargetFlexible})
    if (to_string(p) == s)
      return p;
  return std::nullopt;
}

void MatcherConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw std::invalid_argument("threshold must lie in [0, 1]");
  if (name_weight < 0.0 || struct_weight < 0.0 ||
      std::abs(name_weight + struct_weight - 1.0) > 1e-9)
    throw std::invalid_argument("name and structure weights must be non-negative and sum to 1");
}

NameSimilarity::NameSimilarity(const MatcherConfig &cfg) : kind_(cfg.name_sim) {
  if (kind_ == NameSimKind::Semantic)
    dict_ = cfg.synonym_source ? load_synonyms(*cfg.synonym_source) : builtin_synonyms();
}

double NameSimilarity::operator()(std::string_view a, std::string_view b) const {
  switch (kind_) {
  case NameSimKind::Exact: return exact_sim(a, b);
  case NameSimKind::Lcs: return lcs_sim(a, b);
  case NameSimKind::Bigram: return bigram_sim(a, b);
  case NameSimKind::Semantic: return semantic_sim(a, b, dict_);
  }
  return 0.0;
}

Matching::Matching(std::size_t old_size, std::size_t new_size)
    : to_new_(old_size, kNoNode), to_old_(new_size, kNoNode) {}

void Matching::pair(int old_node, int new_node) {
  if (old_node < 0 || new_node < 0 || static_cast<std::size_t>(old_node) >= to_new_.size() ||
      static_cast<std::size_t>(new_node) >= to_old_.size())
    throw Error(Errc::InconsistentMatching, "pair references a node outside its model");
  if (!old_free(old_node) || !new_free(new_node))
    throw Error(Errc::InconsistentMatching, "element paired twice");
  to_new_[static_cast<std::size_t>(old_node)] = new_node;
  to_old_[static_cast<std::size_t>(new_node)] = old_node;
}

void Matching::dissolve(int old_node) {
  const int n = partner_of_old(old_node);
  if (n == kNoNode)
    return;
  to_new_[static_cast<std::size_t>(old_node)] = kNoNode;
  to_old_[static_cast<std::size_t>(n)] = kNoNode;
  std::erase_if(edge_pairs_, [&](const EdgePair &e) { return e.old_edge.owner == old_node; });
}

int Matching::partner_of_old(int old_node) const {
  return to_new_.at(static_cast<std::size_t>(old_node));
}

int Matching::partner_of_new(int new_node) const {
  return to_old_.at(static_cast<std::size_t>(new_node));
}

std::vector<ElementPair> Matching::element_pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t i = 0; i < to_new_.size(); ++i)
    if (to_new_[i] != kNoNode)
      out.push_back({static_cast<int>(i), to_new_[i]});
  return out;
}

std::size_t Matching::pair_count() const {
  return static_cast<std::size_t>(
      std::count_if(to_new_.begin(), to_new_.end(), [](int n) { return n != kNoNode; }));
}

std::vector<std::string> matching_violations(const ModelIndex &old_model,
                                             const ModelIndex &new_model, const Matching &m) {
  std::vector<std::string> out;
  if (m.old_size() != old_model.size() || m.new_size() != new_model.size()) {
    out.push_back("matching sized for different models");
    return out;
  }
  if (m.partner_of_old(0) != 0)
    out.push_back("roots are not paired with each other");
  std::vector<int> seen(new_model.size(), 0);
  for (const ElementPair &p : m.element_pairs()) {
    if (m.partner_of_new(p.new_node) != p.old_node)
      out.push_back("pair (" + std::to_string(p.old_node) + "," + std::to_string(p.new_node) +
                    ") is not mirrored");
    if (++seen[static_cast<std::size_t>(p.new_node)] > 1)
      out.push_back("new node " + std::to_string(p.new_node) + " paired twice");
    if (old_model.type(p.old_node) != new_model.type(p.new_node))
      out.push_back("pair (" + std::to_string(p.old_node) + "," + std::to_string(p.new_node) +
                    ") mixes metatypes");
  }
  std::set<std::pair<int, int>> old_edges, new_edges;
  for (const EdgePair &e : m.edge_pairs()) {
    if (m.partner_of_old(e.old_edge.owner) != e.new_edge.owner)
      out.push_back("edge pair between unpaired owners");
    if (e.old_edge.role != e.new_edge.role)
      out.push_back("edge pair mixes roles");
    if (!old_model.element(e.old_edge.owner).edge(e.old_edge.role) ||
        !new_model.element(e.new_edge.owner).edge(e.new_edge.role))
      out.push_back("edge pair names a missing edge");
    if (!old_edges.insert({e.old_edge.owner, static_cast<int>(e.old_edge.role)}).second ||
        !new_edges.insert({e.new_edge.owner, static_cast<int>(e.new_edge.role)}).second)
      out.push_back("edge paired twice");
  }
  return out;
}

double score_pair(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                  const MatcherConfig &cfg, const NameSimilarity &sim) {
  const Metatype type = a.type(a_node);
  if (type != b.type(b_node))
    throw Error(Errc::MetatypeMismatch, std::string(display_name(type)) + " vs " +
                                            std::string(display_name(b.type(b_node))));
  if (!is_named(type))
    return unnamed_context(a, a_node, b, b_node, sim);
  return cfg.name_weight * sim(a.name(a_node), b.name(b_node)) +
         cfg.struct_weight * named_context(a, a_node, b, b_node, sim);
}

double score_pair(const ModelIndex &a, int a_node, const ModelIndex &b, int b_node,
                  const MatcherConfig &cfg) {
  return score_pair(a, a_node, b, b_node, cfg, NameSimilarity(cfg));
}

std::vector<Candidate> score_candidates(const ModelIndex &old_model, const ModelIndex &new_model,
                                        const std::vector<int> &old_nodes,
                                        const std::vector<int> &new_nodes,
                                        const MatcherConfig &cfg, const NameSimilarity &sim,
                                        Execution exec) {
  const auto rows = static_cast<std::ptrdiff_t>(old_nodes.size());
  std::vector<std::vector<Candidate>> per_row(old_nodes.size());
  auto score_row = [&](std::ptrdiff_t r) {
    const int o = old_nodes[static_cast<std::size_t>(r)];
    auto &out = per_row[static_cast<std::size_t>(r)];
    for (int n : new_nodes) {
      if (old_model.type(o) != new_model.type(n))
        continue;
      const double s = score_pair(old_model, o, new_model, n, cfg, sim);
      if (s >= cfg.threshold)
        out.push_back({s, o, n});
    }
  };

  if (exec == Execution::Serial) {
    for (std::ptrdiff_t r = 0; r < rows; ++r)
      score_row(r);
  } else {
    const bool worth_it = old_nodes.size() * new_nodes.size() >= kParallelCutoff;
#pragma omp parallel for schedule(dynamic, 4) if (worth_it)
    for (std::ptrdiff_t r = 0; r < rows; ++r)
      score_row(r);
  }

  std::vector<Candidate> out;
  for (auto &row : per_row)
    out.insert(out.end(), row.begin(), row.end());
  return out;
}

Matching match_top_down(const ModelIndex &old_model, const ModelIndex &new_model,
                        const MatcherConfig &cfg) {
  cfg.validate();
  const NameSimilarity sim(cfg);
  Matching m = roots_only(old_model, new_model);
  if (cfg.exact_name_first)
    exact_name_prepass(old_model, new_model, m);
  descend_top_down(old_model, new_model, cfg, sim, m);
  return m;
}

Matching match_full_scope(const ModelIndex &old_model, const ModelIndex &new_model,
                          const MatcherConfig &cfg, Execution exec) {
  cfg.validate();
  const NameSimilarity sim(cfg);
  Matching m = roots_only(old_model, new_model);
  if (cfg.exact_name_first)
    exact_name_prepass(old_model, new_model, m);
  extend_full_scope(old_model, new_model, cfg, sim, exec, m);
  return m;
}

Matching match_two_phase(const ModelIndex &old_model, const ModelIndex &new_model,
                         const MatcherConfig &cfg, Execution exec) {
  cfg.validate();
  const NameSimilarity sim(cfg);
  Matching m = roots_only(old_model, new_model);
  if (cfg.exact_name_first)
    exact_name_prepass(old_model, new_model, m);
  descend_top_down(old_model, new_model, cfg, sim, m);
  extend_full_scope(old_model, new_model, cfg, sim, exec, m);
  return m;
}

Matching match_edges(const ModelIndex &old_model, const ModelIndex &new_model, Matching m,
                     const MatcherConfig &cfg) {
  m.edge_pairs().clear();
  for (const ElementPair &p : m.element_pairs()) {
    const Metatype type = old_model.type(p.old_node);
    if (!is_edge_bearing(type))
      continue;
    bool keep = true;
    if (type == Metatype::EReference &&
        !parents_correspond(old_model, p.old_node, new_model, p.new_node, m))
      keep = false;
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!keep || !has_edge_role(type, role))
        continue;
      const int to = old_model.endpoint(p.old_node, role);
      const int tn = new_model.endpoint(p.new_node, role);
      const bool same = to != kNoNode && tn != kNoNode && m.partner_of_old(to) == tn;
      if (!same && (role == EdgeRole::Source || cfg.edge_policy == EdgePolicy::Strict))
        keep = false;
    }
    if (!keep) {
      m.dissolve(p.old_node);
      continue;
    }
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target})
      if (has_edge_role(type, role))
        m.edge_pairs().push_back({{p.old_node, role}, {p.new_node, role}});
  }
  return m;
}

Matching match_models(const ModelIndex &old_model, const ModelIndex &new_model,
                      const MatcherConfig &cfg, Execution exec) {
  Matching m = [&] {
    switch (cfg.pipeline) {
    case Pipeline::TopDown: return match_top_down(old_model, new_model, cfg);
    case Pipeline::FullScope: return match_full_scope(old_model, new_model, cfg, exec);
    case Pipeline::TwoPhase: break;
    }
    return match_two_phase(old_model, new_model, cfg, exec);
  }();
  return match_edges(old_model, new_model, std::move(m), cfg);
}

} // namespace mmc
