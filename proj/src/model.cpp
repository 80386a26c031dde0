#include "mmc/model.hpp"

#include <array>
#include <functional>
#include <unordered_map>

namespace mmc {

namespace {

struct MetatypeInfo {
  std::string_view tag;
  std::string_view display;
  bool named;
};

constexpr std::array<MetatypeInfo, kMetatypeCount> kInfo{{
    {"epackage", "EPackage", true},
    {"eclass", "EClass", true},
    {"eattribute", "EAttribute", true},
    {"ereference", "EReference", true},
    {"process", "Process", true},
    {"subprocess", "SubProcess", true},
    {"task", "Task", true},
    {"startevent", "StartEvent", false},
    {"endevent", "EndEvent", false},
    {"sequenceflow", "SequenceFlow", false},
}};

const MetatypeInfo &info(Metatype type) { return kInfo[static_cast<std::size_t>(type)]; }

} // namespace

std::string_view to_string(Errc code) {
  switch (code) {
  case Errc::MalformedDocument: return "MalformedDocument";
  case Errc::UnknownMetatype: return "UnknownMetatype";
  case Errc::ContainmentViolation: return "ContainmentViolation";
  case Errc::DanglingEdge: return "DanglingEdge";
  case Errc::MissingName: return "MissingName";
  case Errc::EmptyGroup: return "EmptyGroup";
  case Errc::MetatypeMismatch: return "MetatypeMismatch";
  case Errc::InconsistentMatching: return "InconsistentMatching";
  case Errc::UnresolvablePath: return "UnresolvablePath";
  case Errc::InvariantViolation: return "InvariantViolation";
  case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string &what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::string_view xml_tag(Metatype type) { return info(type).tag; }
std::string_view display_name(Metatype type) { return info(type).display; }

std::optional<Metatype> metatype_from_tag(std::string_view tag) {
  for (std::size_t i = 0; i < kInfo.size(); ++i)
    if (kInfo[i].tag == tag)
      return static_cast<Metatype>(i);
  return std::nullopt;
}

std::optional<Metatype> metatype_from_display_name(std::string_view name) {
  for (std::size_t i = 0; i < kInfo.size(); ++i)
    if (kInfo[i].display == name)
      return static_cast<Metatype>(i);
  return std::nullopt;
}

bool is_named(Metatype type) { return info(type).named; }

bool is_root_kind(Metatype type) {
  return type == Metatype::EPackage || type == Metatype::Process;
}

bool may_contain(Metatype parent, Metatype child) {
  switch (parent) {
  case Metatype::EPackage:
    return child == Metatype::EPackage || child == Metatype::EClass;
  case Metatype::EClass:
    return child == Metatype::EAttribute || child == Metatype::EReference;
  case Metatype::Process:
  case Metatype::SubProcess:
    return child == Metatype::Task || child == Metatype::StartEvent ||
           child == Metatype::EndEvent || child == Metatype::SequenceFlow ||
           child == Metatype::SubProcess;
  default:
    return false;
  }
}

std::string_view to_string(EdgeRole role) {
  return role == EdgeRole::Source ? "source" : "target";
}

bool has_edge_role(Metatype type, EdgeRole role) {
  if (type == Metatype::SequenceFlow)
    return true;
  return type == Metatype::EReference && role == EdgeRole::Target;
}

bool is_edge_bearing(Metatype type) {
  return type == Metatype::SequenceFlow || type == Metatype::EReference;
}

bool is_valid_edge_target(Metatype owner, Metatype target) {
  if (owner == Metatype::EReference)
    return target == Metatype::EClass;
  if (owner == Metatype::SequenceFlow)
    return target == Metatype::Task || target == Metatype::StartEvent ||
           target == Metatype::EndEvent || target == Metatype::SubProcess;
  return false;
}

const Edge *Element::edge(EdgeRole role) const {
  for (const Edge &e : edges)
    if (e.role == role)
      return &e;
  return nullptr;
}

Edge *Element::edge(EdgeRole role) {
  for (Edge &e : edges)
    if (e.role == role)
      return &e;
  return nullptr;
}

void validate(const Model &model) {
  const Element &root = model.root;
  if (!is_root_kind(root.type))
    throw Error(Errc::ContainmentViolation,
                std::string(display_name(root.type)) + " cannot be a document root");

  std::unordered_map<std::string, const Element *> by_id;
  std::function<void(const Element &)> collect = [&](const Element &e) {
    if (!e.id.empty() && !by_id.emplace(e.id, &e).second)
      throw Error(Errc::MalformedDocument, "duplicate id '" + e.id + "'");
    for (const Element &c : e.children)
      collect(c);
  };
  collect(root);

  std::function<void(const Element &)> check = [&](const Element &e) {
    if (is_named(e.type) && e.name.empty())
      throw Error(Errc::MissingName, std::string(display_name(e.type)) + " without a name");
    if (!is_named(e.type) && !e.name.empty())
      throw Error(Errc::MalformedDocument,
                  std::string(display_name(e.type)) + " cannot carry a name");
    for (EdgeRole role : {EdgeRole::Source, EdgeRole::Target}) {
      std::size_t count = 0;
      for (const Edge &edge : e.edges)
        count += edge.role == role ? 1 : 0;
      const std::size_t expected = has_edge_role(e.type, role) ? 1 : 0;
      if (count != expected)
        throw Error(Errc::MalformedDocument, std::string(display_name(e.type)) + " '" +
                                                 e.name + e.id + "' needs " +
                                                 std::to_string(expected) + " " +
                                                 std::string(to_string(role)) + " edge(s)");
    }
    for (const Edge &edge : e.edges) {
      auto it = by_id.find(edge.target);
      if (it == by_id.end())
        throw Error(Errc::DanglingEdge, "unresolved " + std::string(to_string(edge.role)) +
                                            " '" + edge.target + "'");
      if (!is_valid_edge_target(e.type, it->second->type))
        throw Error(Errc::DanglingEdge, std::string(display_name(e.type)) + " " +
                                            std::string(to_string(edge.role)) + " '" +
                                            edge.target + "' is a " +
                                            std::string(display_name(it->second->type)));
    }
    for (const Element &c : e.children) {
      if (!may_contain(e.type, c.type))
        throw Error(Errc::ContainmentViolation, std::string(display_name(e.type)) +
                                                    " cannot contain " +
                                                    std::string(display_name(c.type)));
      check(c);
    }
  };
  check(root);
}

std::size_t element_count(const Model &model) {
  std::function<std::size_t(const Element &)> count = [&](const Element &e) {
    std::size_t n = 1;
    for (const Element &c : e.children)
      n += count(c);
    return n;
  };
  return count(model.root);
}

ModelBuilder::ModelBuilder(Metatype root_type, std::string name, std::string id) {
  model_.root.type = root_type;
  model_.root.name = std::move(name);
  model_.root.id = std::move(id);
}

Element *ModelBuilder::find(std::string_view id) {
  if (id.empty())
    return &model_.root;
  std::function<Element *(Element &)> walk = [&](Element &e) -> Element * {
    if (e.id == id)
      return &e;
    for (Element &c : e.children)
      if (Element *hit = walk(c))
        return hit;
    return nullptr;
  };
  Element *hit = walk(model_.root);
  if (!hit)
    throw Error(Errc::DanglingEdge, "builder: no element '" + std::string(id) + "'");
  return hit;
}

ModelBuilder &ModelBuilder::add(std::string_view parent_id, Metatype type, std::string name,
                                std::string id, Attributes attributes) {
  Element e;
  e.type = type;
  e.name = std::move(name);
  e.id = std::move(id);
  e.attributes = std::move(attributes);
  find(parent_id)->children.push_back(std::move(e));
  return *this;
}

ModelBuilder &ModelBuilder::flow(std::string_view parent_id, std::string id, std::string source,
                                 std::string target) {
  Element e;
  e.type = Metatype::SequenceFlow;
  e.id = std::move(id);
  e.edges = {{EdgeRole::Source, std::move(source)}, {EdgeRole::Target, std::move(target)}};
  find(parent_id)->children.push_back(std::move(e));
  return *this;
}

ModelBuilder &ModelBuilder::reference(std::string_view owner_id, std::string name,
                                      std::string id, std::string target) {
  Element e;
  e.type = Metatype::EReference;
  e.name = std::move(name);
  e.id = std::move(id);
  e.edges = {{EdgeRole::Target, std::move(target)}};
  find(owner_id)->children.push_back(std::move(e));
  return *this;
}

Model ModelBuilder::build() const {
  validate(model_);
  return model_;
}

} // namespace mmc
