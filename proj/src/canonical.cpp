#include "mmc/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mmc {

namespace {

/// Dense ranks of `v` in sorted order; equal strings share a rank.
std::vector<int> rank_strings(const std::vector<std::string> &v) {
  std::vector<std::string> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin());
  return out;
}

void append_field(std::string &out, std::string_view s) {
  out += std::to_string(s.size());
  out += ':';
  out += s;
}

std::string step_label(const PathStep &step) {
  std::string label = is_named(step.type) ? step.name : std::string(xml_tag(step.type));
  if (step.ordinal > 0)
    label += "[" + std::to_string(step.ordinal) + "]";
  return label;
}

} // namespace

std::string CanonicalPath::str() const {
  std::string out;
  for (const PathStep &step : steps)
    out += "/" + step_label(step);
  return out.empty() ? "/" : out;
}

std::string CanonicalPath::key() const {
  std::string out;
  for (const PathStep &step : steps) {
    out += '/';
    out += std::to_string(static_cast<int>(step.type));
    out += ',';
    append_field(out, step.name);
    out += '#';
    out += std::to_string(step.ordinal);
  }
  return out;
}

std::string CanonicalPath::label() const {
  return steps.empty() ? std::string() : step_label(steps.back());
}

CanonicalPath CanonicalPath::parent() const {
  CanonicalPath p = *this;
  if (!p.steps.empty())
    p.steps.pop_back();
  return p;
}

CanonicalLayout::CanonicalLayout(const ModelIndex &index) : index_(&index) {
  const std::size_t n = index.size();
  base_.resize(n);
  incoming_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Element &e = index.element(static_cast<int>(i));
    std::string &b = base_[i];
    b += std::to_string(static_cast<int>(e.type));
    b += '|';
    append_field(b, e.name);
    for (const auto &[k, v] : e.attributes) {
      b += '@';
      append_field(b, k);
      append_field(b, v);
    }
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (e.edge(role))
        b += role == EdgeRole::Source ? ">s" : ">t";
      const int t = index.endpoint(static_cast<int>(i), role);
      if (t != kNoNode)
        incoming_[static_cast<std::size_t>(t)].emplace_back(role, static_cast<int>(i));
    }
  }

  colour_ = rank_strings(base_);
  individual_.assign(n, -1);
  refine();
  for (int next = 0;; ++next) {
    const int tied = first_tied_sibling();
    if (tied == kNoNode)
      break;
    individual_[static_cast<std::size_t>(tied)] = next;
    refine();
  }
  arrange();
  compute_fingerprints();
  for (std::size_t i = 0; i < n; ++i)
    by_key_.emplace(keys_[i], static_cast<int>(i));
}

void CanonicalLayout::refine() {
  const ModelIndex &index = *index_;
  const std::size_t n = index.size();
  std::size_t classes = std::set<int>(colour_.begin(), colour_.end()).size();
  for (;;) {
    std::vector<std::string> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int node = static_cast<int>(i);
      auto colour = [&](int x) { return x == kNoNode ? -1 : colour_[static_cast<std::size_t>(x)]; };
      std::string &s = sig[i];
      s = std::to_string(colour_[i]) + '|' + std::to_string(individual_[i]) + '^' +
          std::to_string(colour(index[node].parent));
      for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target})
        if (index.element(node).edge(role))
          s += (role == EdgeRole::Source ? ">s" : ">t") + std::to_string(colour(index.endpoint(node, role)));
      std::vector<int> kids;
      for (int c : index[node].children)
        kids.push_back(colour(c));
      std::sort(kids.begin(), kids.end());
      s += '{';
      for (int k : kids)
        s += std::to_string(k) + ',';
      std::vector<std::pair<int, int>> in;
      for (const auto &[role, owner] : incoming_[i])
        in.emplace_back(static_cast<int>(role), colour(owner));
      std::sort(in.begin(), in.end());
      s += '<';
      for (const auto &[role, c] : in)
        s += std::to_string(role) + ':' + std::to_string(c) + ',';
    }
    std::vector<int> next = rank_strings(sig);
    const std::size_t next_classes = std::set<int>(next.begin(), next.end()).size();
    colour_ = std::move(next);
    if (next_classes == classes)
      break;
    classes = next_classes;
  }
}

int CanonicalLayout::first_tied_sibling() const {
  const ModelIndex &index = *index_;
  int best = kNoNode;
  for (std::size_t p = 0; p < index.size(); ++p) {
    const auto &kids = index[static_cast<int>(p)].children;
    for (std::size_t a = 0; a < kids.size(); ++a)
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        const int x = kids[a], y = kids[b];
        if (colour_[static_cast<std::size_t>(x)] != colour_[static_cast<std::size_t>(y)] ||
            index.type(x) != index.type(y) || index.name(x) != index.name(y))
          continue;
        if (best == kNoNode || colour_[static_cast<std::size_t>(x)] < colour_[static_cast<std::size_t>(best)])
          best = x;
      }
  }
  return best;
}

void CanonicalLayout::arrange() {
  const ModelIndex &index = *index_;
  const std::size_t n = index.size();
  order_.assign(n, {});
  paths_.assign(n, {});
  keys_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const int node = static_cast<int>(i);
    if (index[node].parent == kNoNode) {
      paths_[i].steps.push_back({index.type(node), index.name(node), 0});
      keys_[i] = paths_[i].key();
    }
    std::vector<int> kids = index[node].children;
    std::stable_sort(kids.begin(), kids.end(), [&](int a, int b) {
      const Element &ea = index.element(a);
      const Element &eb = index.element(b);
      if (ea.type != eb.type)
        return ea.type < eb.type;
      if (ea.name != eb.name)
        return ea.name < eb.name;
      return colour_[static_cast<std::size_t>(a)] < colour_[static_cast<std::size_t>(b)];
    });
    int ordinal = 0;
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const Element &e = index.element(kids[k]);
      if (k > 0) {
        const Element &prev = index.element(kids[k - 1]);
        ordinal = (prev.type == e.type && prev.name == e.name) ? ordinal + 1 : 0;
      }
      CanonicalPath p = paths_[i];
      p.steps.push_back({e.type, e.name, ordinal});
      keys_[static_cast<std::size_t>(kids[k])] = p.key();
      paths_[static_cast<std::size_t>(kids[k])] = std::move(p);
    }
    order_[i] = std::move(kids);
  }
}

void CanonicalLayout::compute_fingerprints() {
  const ModelIndex &index = *index_;
  const std::size_t n = index.size();
  fingerprints_.assign(n, {});
  // Children follow their parent in document order, so a reverse sweep
  // visits every child before its parent.
  for (std::size_t i = n; i-- > 0;) {
    const int node = static_cast<int>(i);
    std::string fp = base_[i];
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!index.element(node).edge(role))
        continue;
      const int t = index.endpoint(node, role);
      append_field(fp, t == kNoNode ? std::string("?") : keys_[static_cast<std::size_t>(t)]);
    }
    fp += '{';
    for (int c : order_[i])
      append_field(fp, fingerprints_[static_cast<std::size_t>(c)]);
    fp += '}';
    fingerprints_[i] = std::move(fp);
  }
}

std::optional<int> CanonicalLayout::resolve(const CanonicalPath &path) const {
  auto it = by_key_.find(path.key());
  if (it == by_key_.end())
    return std::nullopt;
  return it->second;
}

Model canonicalize(const Model &model) {
  const ModelIndex index(model);
  const CanonicalLayout layout(index);

  std::set<int> targets;
  for (std::size_t i = 0; i < index.size(); ++i)
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target})
      if (int t = index.endpoint(static_cast<int>(i), role); t != kNoNode)
        targets.insert(t);

  std::map<std::string, int> readable;
  for (int t : targets)
    ++readable[layout.path(t).str()];
  std::vector<std::string> ids(index.size());
  for (int t : targets) {
    const CanonicalPath &p = layout.path(t);
    ids[static_cast<std::size_t>(t)] = readable[p.str()] == 1 ? p.str() : p.key();
  }

  std::function<Element(int)> build = [&](int node) {
    const Element &src = index.element(node);
    Element out;
    out.type = src.type;
    out.name = src.name;
    out.id = ids[static_cast<std::size_t>(node)];
    out.attributes = src.attributes;
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!src.edge(role))
        continue;
      const int t = index.endpoint(node, role);
      out.edges.push_back({role, t == kNoNode ? src.edge(role)->target
                                              : ids[static_cast<std::size_t>(t)]});
    }
    for (int c : layout.sorted_children(node))
      out.children.push_back(build(c));
    return out;
  };
  return Model{build(0)};
}

bool models_equivalent(const Model &a, const Model &b) {
  const ModelIndex ia(a);
  const ModelIndex ib(b);
  if (ia.size() != ib.size())
    return false;
  return CanonicalLayout(ia).fingerprint(0) == CanonicalLayout(ib).fingerprint(0);
}

} // namespace mmc
