#include "mmc/diff.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace mmc {

namespace {

class IdAllocator {
public:
  explicit IdAllocator(const Model &model) {
    std::function<void(const Element &)> walk = [&](const Element &e) {
      if (!e.id.empty())
        used_.insert(e.id);
      for (const Element &c : e.children)
        walk(c);
    };
    walk(model.root);
  }

  std::string fresh() {
    for (;;) {
      std::string id = "_e" + std::to_string(next_++);
      if (used_.insert(id).second)
        return id;
    }
  }

private:
  std::set<std::string> used_;
  int next_ = 1;
};

/// Current index and layout of a model under edit, rebuilt lazily after
/// every mutation.
class Workspace {
public:
  explicit Workspace(Model model) : model_(std::move(model)) {}

  Model &model() { return model_; }
  const ModelIndex &index() {
    refresh();
    return *index_;
  }
  const CanonicalLayout &layout() {
    refresh();
    return *layout_;
  }
  void touch() {
    layout_.reset();
    index_.reset();
  }

  int resolve(const CanonicalPath &path) {
    auto node = layout().resolve(path);
    if (!node)
      throw Error(Errc::UnresolvablePath, path.str());
    return *node;
  }

  Element &element(int node) { return element_at(model_.root, index().route(node)); }

  const std::string &ensure_id(int node, IdAllocator &ids) {
    Element &e = element(node);
    if (e.id.empty()) {
      e.id = ids.fresh();
      touch();
    }
    return e.id;
  }

private:
  void refresh() {
    if (!index_) {
      index_ = std::make_unique<ModelIndex>(model_);
      layout_ = std::make_unique<CanonicalLayout>(*index_);
    }
  }

  Model model_;
  std::unique_ptr<ModelIndex> index_;
  std::unique_ptr<CanonicalLayout> layout_;
};

[[noreturn]] void violation(const std::string &what) {
  throw Error(Errc::InvariantViolation, what);
}

void sort_edges(Element &e) {
  std::sort(e.edges.begin(), e.edges.end(),
            [](const Edge &a, const Edge &b) { return a.role < b.role; });
}

void apply_op(Workspace &ws, const EditOp &op, IdAllocator &ids, std::string created_id = {}) {
  switch (op.kind) {
  case EditKind::CreateElement: {
    const auto &p = std::get<CreatePayload>(op.payload);
    const int parent = ws.resolve(p.parent);
    if (!may_contain(ws.index().type(parent), p.type))
      violation(std::string(display_name(ws.index().type(parent))) + " cannot contain " +
                std::string(display_name(p.type)));
    Element e;
    e.type = p.type;
    e.name = p.name;
    e.id = std::move(created_id);
    e.attributes = p.attributes;
    ws.element(parent).children.push_back(std::move(e));
    break;
  }
  case EditKind::DeleteElement: {
    const auto &p = std::get<DeletePayload>(op.payload);
    const int node = ws.resolve(op.subject);
    const IndexedNode &n = ws.index()[node];
    if (n.parent == kNoNode)
      violation("cannot delete the root");
    if (ws.index().type(node) != p.type)
      violation("delete of " + op.subject.str() + " expects a " +
                std::string(display_name(p.type)));
    auto &siblings = ws.element(n.parent).children;
    siblings.erase(siblings.begin() + n.slot);
    break;
  }
  case EditKind::MoveElement: {
    const auto &p = std::get<MovePayload>(op.payload);
    const int node = ws.resolve(op.subject);
    const int to = ws.resolve(p.to);
    const ModelIndex &index = ws.index();
    if (index[node].parent == kNoNode)
      violation("cannot move the root");
    if (index.contains(node, to))
      violation("cannot move " + op.subject.str() + " into itself");
    if (!may_contain(index.type(to), index.type(node)))
      violation(std::string(display_name(index.type(to))) + " cannot contain " +
                std::string(display_name(index.type(node))));
    std::vector<int> from_route = index.route(node);
    std::vector<int> to_route = index.route(to);
    const std::size_t depth = from_route.size() - 1;
    const int slot = from_route.back();
    from_route.pop_back();
    if (to_route.size() > depth && std::equal(from_route.begin(), from_route.end(),
                                              to_route.begin()) &&
        to_route[depth] > slot)
      --to_route[depth];
    auto &siblings = element_at(ws.model().root, from_route).children;
    Element moved = std::move(siblings[static_cast<std::size_t>(slot)]);
    siblings.erase(siblings.begin() + slot);
    element_at(ws.model().root, to_route).children.push_back(std::move(moved));
    break;
  }
  case EditKind::RenameElement: {
    const auto &p = std::get<RenamePayload>(op.payload);
    Element &e = ws.element(ws.resolve(op.subject));
    if (!is_named(e.type) || e.name != p.old_name || p.new_name.empty())
      violation("rename of " + op.subject.str() + " does not fit the element");
    e.name = p.new_name;
    break;
  }
  case EditKind::UpdateAttribute: {
    const auto &p = std::get<UpdatePayload>(op.payload);
    Element &e = ws.element(ws.resolve(op.subject));
    auto it = e.attributes.find(p.key);
    const std::optional<std::string> current =
        it == e.attributes.end() ? std::nullopt : std::optional<std::string>(it->second);
    if (current != p.old_value)
      violation("attribute '" + p.key + "' of " + op.subject.str() + " does not hold the old value");
    if (p.new_value)
      e.attributes[p.key] = *p.new_value;
    else
      e.attributes.erase(p.key);
    break;
  }
  case EditKind::DeleteEdge: {
    const auto &p = std::get<EdgePayload>(op.payload);
    Element &e = ws.element(ws.resolve(op.subject));
    auto it = std::find_if(e.edges.begin(), e.edges.end(),
                           [&](const Edge &edge) { return edge.role == p.role; });
    if (it == e.edges.end())
      violation(op.subject.str() + " has no " + std::string(to_string(p.role)) + " edge");
    e.edges.erase(it);
    break;
  }
  case EditKind::RetargetEdge:
  case EditKind::CreateEdge: {
    const bool retarget = op.kind == EditKind::RetargetEdge;
    const EdgeRole role = retarget ? std::get<RetargetPayload>(op.payload).role
                                   : std::get<EdgePayload>(op.payload).role;
    const CanonicalPath &target_path = retarget ? std::get<RetargetPayload>(op.payload).new_target
                                                : std::get<EdgePayload>(op.payload).target;
    if (retarget && role != EdgeRole::Target)
      violation("only target edges can be retargeted");
    const int owner = ws.resolve(op.subject);
    const int target = ws.resolve(target_path);
    if (!has_edge_role(ws.index().type(owner), role))
      violation(op.subject.str() + " cannot carry a " + std::string(to_string(role)) + " edge");
    const std::string target_id = ws.ensure_id(target, ids);
    Element &e = ws.element(owner);
    Edge *edge = e.edge(role);
    if (retarget != (edge != nullptr))
      violation(op.subject.str() + (retarget ? " has no " : " already has a ") +
                std::string(to_string(role)) + " edge");
    if (edge) {
      edge->target = target_id;
    } else {
      e.edges.push_back({role, target_id});
      sort_edges(e);
    }
    break;
  }
  }
  ws.touch();
}

std::string tracking_id(char side, int node) { return std::string(1, side) + std::to_string(node); }

} // namespace

std::string_view to_string(EditKind kind) {
  switch (kind) {
  case EditKind::CreateElement: return "CreateElement";
  case EditKind::DeleteElement: return "DeleteElement";
  case EditKind::MoveElement: return "MoveElement";
  case EditKind::RenameElement: return "RenameElement";
  case EditKind::UpdateAttribute: return "UpdateAttribute";
  case EditKind::RetargetEdge: return "RetargetEdge";
  case EditKind::CreateEdge: return "CreateEdge";
  case EditKind::DeleteEdge: return "DeleteEdge";
  }
  return "?";
}

EditScript derive_edit_script(const ModelIndex &old_model, const ModelIndex &new_model,
                              const Matching &m) {
  if (auto v = matching_violations(old_model, new_model, m); !v.empty())
    throw Error(Errc::InconsistentMatching, v.front());
  std::set<std::pair<int, EdgeRole>> paired_edges;
  for (const EdgePair &e : m.edge_pairs())
    paired_edges.insert({e.old_edge.owner, e.old_edge.role});
  for (const ElementPair &p : m.element_pairs()) {
    const Metatype type = old_model.type(p.old_node);
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!has_edge_role(type, role))
        continue;
      if (!paired_edges.count({p.old_node, role}))
        throw Error(Errc::InconsistentMatching, "edge-bearing pair without edge correspondence");
      const int to = old_model.endpoint(p.old_node, role);
      const int tn = new_model.endpoint(p.new_node, role);
      if (role == EdgeRole::Source && m.partner_of_old(to) != tn)
        throw Error(Errc::InconsistentMatching, "paired flow with a changed source");
    }
  }

  // Working copy with one tracking id per element: "o<n>" for old nodes,
  // "n<n>" for created ones. Paths never depend on ids, so the copy and the
  // caller's model resolve every path to the same element.
  Model working = old_model.model();
  {
    std::function<void(Element &, int &)> retag = [&](Element &e, int &next) {
      const int self = next++;
      e.id = tracking_id('o', self);
      for (Edge &edge : e.edges)
        edge.target = tracking_id('o', old_model.find_id(edge.target));
      for (Element &c : e.children)
        retag(c, next);
    };
    int next = 0;
    retag(working.root, next);
  }
  Workspace ws(std::move(working));
  IdAllocator ids(ws.model());
  EditScript script;

  auto path_of = [&](const std::string &id) -> CanonicalPath {
    const int node = ws.index().find_id(id);
    return ws.layout().path(node);
  };
  auto new_counterpart = [&](int new_node) {
    const int o = m.partner_of_new(new_node);
    return o != kNoNode ? tracking_id('o', o) : tracking_id('n', new_node);
  };
  auto emit = [&](EditOp op, std::string created_id = {}) {
    apply_op(ws, op, ids, created_id);
    script.ops.push_back(std::move(op));
  };

  for (std::size_t i = 1; i < new_model.size(); ++i) {
    const int n = static_cast<int>(i);
    if (!m.new_free(n))
      continue;
    const Element &e = new_model.element(n);
    EditOp op{EditKind::CreateElement, {},
              CreatePayload{path_of(new_counterpart(new_model[n].parent)), e.type, e.name,
                            e.attributes}};
    const std::string id = tracking_id('n', n);
    apply_op(ws, op, ids, id);
    op.subject = path_of(id);
    script.ops.push_back(std::move(op));
  }

  std::vector<ElementPair> pairs = m.element_pairs();
  std::vector<ElementPair> by_new = pairs;
  std::sort(by_new.begin(), by_new.end(),
            [](const ElementPair &a, const ElementPair &b) { return a.new_node < b.new_node; });
  for (const ElementPair &p : by_new) {
    const int op_parent = old_model[p.old_node].parent;
    const int np_parent = new_model[p.new_node].parent;
    if (op_parent == kNoNode || m.partner_of_old(op_parent) == np_parent)
      continue;
    const std::string self = tracking_id('o', p.old_node);
    const CanonicalPath subject = path_of(self);
    emit({EditKind::MoveElement, subject,
          MovePayload{subject.parent(), path_of(new_counterpart(np_parent))}});
  }

  for (const ElementPair &p : pairs) {
    const Element &eo = old_model.element(p.old_node);
    const Element &en = new_model.element(p.new_node);
    if (eo.name != en.name)
      emit({EditKind::RenameElement, path_of(tracking_id('o', p.old_node)),
            RenamePayload{eo.name, en.name}});
  }

  for (const ElementPair &p : pairs) {
    const Attributes &ao = old_model.element(p.old_node).attributes;
    const Attributes &an = new_model.element(p.new_node).attributes;
    std::set<std::string> keys;
    for (const auto &kv : ao)
      keys.insert(kv.first);
    for (const auto &kv : an)
      keys.insert(kv.first);
    for (const std::string &key : keys) {
      auto io = ao.find(key);
      auto in = an.find(key);
      std::optional<std::string> before, after;
      if (io != ao.end())
        before = io->second;
      if (in != an.end())
        after = in->second;
      if (before != after)
        emit({EditKind::UpdateAttribute, path_of(tracking_id('o', p.old_node)),
              UpdatePayload{key, before, after}});
    }
  }

  for (std::size_t i = 0; i < old_model.size(); ++i) {
    const int o = static_cast<int>(i);
    if (!m.old_free(o) || !is_edge_bearing(old_model.type(o)))
      continue;
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!old_model.element(o).edge(role))
        continue;
      emit({EditKind::DeleteEdge, path_of(tracking_id('o', o)),
            EdgePayload{role, path_of(tracking_id('o', old_model.endpoint(o, role)))}});
    }
  }

  for (const ElementPair &p : pairs) {
    if (!is_edge_bearing(old_model.type(p.old_node)))
      continue;
    const int to = old_model.endpoint(p.old_node, EdgeRole::Target);
    const int tn = new_model.endpoint(p.new_node, EdgeRole::Target);
    if (m.partner_of_old(to) == tn)
      continue;
    emit({EditKind::RetargetEdge, path_of(tracking_id('o', p.old_node)),
          RetargetPayload{EdgeRole::Target, path_of(tracking_id('o', to)),
                          path_of(new_counterpart(tn))}});
  }

  for (std::size_t i = 0; i < new_model.size(); ++i) {
    const int n = static_cast<int>(i);
    if (!m.new_free(n) || !is_edge_bearing(new_model.type(n)))
      continue;
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      if (!new_model.element(n).edge(role))
        continue;
      emit({EditKind::CreateEdge, path_of(tracking_id('n', n)),
            EdgePayload{role, path_of(new_counterpart(new_model.endpoint(n, role)))}});
    }
  }

  for (std::size_t i = old_model.size(); i-- > 1;) {
    const int o = static_cast<int>(i);
    if (!m.old_free(o))
      continue;
    const Element &e = old_model.element(o);
    emit({EditKind::DeleteElement, path_of(tracking_id('o', o)), DeletePayload{e.type, e.name}});
  }
  return script;
}

Model apply_edit_script(const Model &old_model, const EditScript &script) {
  Workspace ws(old_model);
  IdAllocator ids(old_model);
  for (const EditOp &op : script.ops)
    apply_op(ws, op, ids);
  Model result = std::move(ws.model());
  try {
    validate(result);
  } catch (const Error &e) {
    throw Error(Errc::InvariantViolation, e.what());
  }
  return result;
}

EditScript diff_models(const Model &old_model, const Model &new_model, const MatcherConfig &cfg,
                       Execution exec) {
  const ModelIndex io(old_model);
  const ModelIndex in(new_model);
  return derive_edit_script(io, in, match_models(io, in, cfg, exec));
}

namespace {

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string text_line(const EditOp &op) {
  const std::string subject = op.subject.str();
  switch (op.kind) {
  case EditKind::CreateElement: {
    const auto &p = std::get<CreatePayload>(op.payload);
    std::string line = "CREATE " + subject + " " + std::string(display_name(p.type));
    for (const auto &[k, v] : p.attributes)
      line += " " + k + "=" + quote(v);
    return line;
  }
  case EditKind::DeleteElement:
    return "DELETE " + subject + " " +
           std::string(display_name(std::get<DeletePayload>(op.payload).type));
  case EditKind::MoveElement:
    return "MOVE " + subject + " -> " + std::get<MovePayload>(op.payload).to.str();
  case EditKind::RenameElement: {
    const auto &p = std::get<RenamePayload>(op.payload);
    return "RENAME " + subject + " " + quote(p.old_name) + " -> " + quote(p.new_name);
  }
  case EditKind::UpdateAttribute: {
    const auto &p = std::get<UpdatePayload>(op.payload);
    auto value = [](const std::optional<std::string> &v) {
      return v ? quote(*v) : std::string("<none>");
    };
    return "UPDATE " + subject + " " + p.key + ": " + value(p.old_value) + " -> " +
           value(p.new_value);
  }
  case EditKind::RetargetEdge: {
    const auto &p = std::get<RetargetPayload>(op.payload);
    return "RETARGET " + subject + " " + std::string(to_string(p.role)) + ": " +
           p.old_target.str() + " -> " + p.new_target.str();
  }
  case EditKind::CreateEdge:
  case EditKind::DeleteEdge: {
    const auto &p = std::get<EdgePayload>(op.payload);
    return std::string(op.kind == EditKind::CreateEdge ? "CREATE-EDGE " : "DELETE-EDGE ") +
           subject + " " + std::string(to_string(p.role)) + ": " + p.target.str();
  }
  }
  return {};
}

nlohmann::ordered_json json_op(const EditOp &op) {
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  auto optional_name = [](Metatype type, const std::string &name) {
    return is_named(type) ? nlohmann::ordered_json(name) : nlohmann::ordered_json(nullptr);
  };
  auto optional_value = [](const std::optional<std::string> &v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  std::visit(
      [&](const auto &p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, CreatePayload>) {
          payload["parent"] = p.parent.str();
          payload["metatype"] = display_name(p.type);
          payload["name"] = optional_name(p.type, p.name);
          payload["attributes"] = nlohmann::ordered_json::object();
          for (const auto &[k, v] : p.attributes)
            payload["attributes"][k] = v;
        } else if constexpr (std::is_same_v<P, DeletePayload>) {
          payload["metatype"] = display_name(p.type);
          payload["name"] = optional_name(p.type, p.name);
        } else if constexpr (std::is_same_v<P, MovePayload>) {
          payload["from"] = p.from.str();
          payload["to"] = p.to.str();
        } else if constexpr (std::is_same_v<P, RenamePayload>) {
          payload["oldName"] = p.old_name;
          payload["newName"] = p.new_name;
        } else if constexpr (std::is_same_v<P, UpdatePayload>) {
          payload["key"] = p.key;
          payload["oldValue"] = optional_value(p.old_value);
          payload["newValue"] = optional_value(p.new_value);
        } else if constexpr (std::is_same_v<P, RetargetPayload>) {
          payload["role"] = to_string(p.role);
          payload["oldTarget"] = p.old_target.str();
          payload["newTarget"] = p.new_target.str();
        } else {
          payload["role"] = to_string(p.role);
          payload["target"] = p.target.str();
        }
      },
      op.payload);
  return {{"kind", to_string(op.kind)}, {"subject", op.subject.str()}, {"payload", payload}};
}

} // namespace

std::string format_script(const EditScript &script, ScriptFormat format) {
  if (format == ScriptFormat::Json) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const EditOp &op : script.ops)
      out.push_back(json_op(op));
    return out.dump(2) + "\n";
  }
  std::string out;
  for (const EditOp &op : script.ops)
    out += text_line(op) + "\n";
  return out;
}

} // namespace mmc
