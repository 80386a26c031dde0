#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmc {

/// Error categories surfaced by every module of the library.
enum class Errc {
  MalformedDocument,
  UnknownMetatype,
  ContainmentViolation,
  DanglingEdge,
  MissingName,
  EmptyGroup,
  MetatypeMismatch,
  InconsistentMatching,
  UnresolvablePath,
  InvariantViolation,
  IoFailure,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &what);
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

/// Element kinds of the Ecore and BPMN subsets. The numeric order is the
/// canonical sibling order.
enum class Metatype {
  EPackage,
  EClass,
  EAttribute,
  EReference,
  Process,
  SubProcess,
  Task,
  StartEvent,
  EndEvent,
  SequenceFlow,
};

inline constexpr int kMetatypeCount = 10;

/// Document tag, e.g. "eclass", "sequenceflow".
std::string_view xml_tag(Metatype type);
/// Display name, e.g. "EClass", "SequenceFlow".
std::string_view display_name(Metatype type);
std::optional<Metatype> metatype_from_tag(std::string_view tag);
std::optional<Metatype> metatype_from_display_name(std::string_view name);

bool is_named(Metatype type);
bool is_root_kind(Metatype type);
bool may_contain(Metatype parent, Metatype child);

enum class EdgeRole { Source, Target };
std::string_view to_string(EdgeRole role);
/// Whether `type` carries an edge with `role`.
bool has_edge_role(Metatype type, EdgeRole role);
bool is_edge_bearing(Metatype type);
bool is_valid_edge_target(Metatype owner, Metatype target);

struct Edge {
  EdgeRole role = EdgeRole::Target;
  std::string target; // local id of the target element

  friend bool operator==(const Edge &, const Edge &) = default;
};

using Attributes = std::map<std::string, std::string>;

/// One node of a model tree. `id` is document-local wiring and is never
/// used to decide correspondence.
struct Element {
  Metatype type = Metatype::EPackage;
  std::string name;
  std::string id;
  Attributes attributes;
  std::vector<Edge> edges;
  std::vector<Element> children;

  const Edge *edge(EdgeRole role) const;
  Edge *edge(EdgeRole role);
};

struct Model {
  Element root;
};

/// Throws Error with the category of the first violated invariant.
void validate(const Model &model);

/// Number of elements in the tree.
std::size_t element_count(const Model &model);

/// Fluent construction of small models, used by the fixtures and tests.
class ModelBuilder {
public:
  explicit ModelBuilder(Metatype root_type, std::string name = {}, std::string id = {});

  /// Appends a child under the element with id `parent_id` (empty = root).
  ModelBuilder &add(std::string_view parent_id, Metatype type, std::string name,
                    std::string id, Attributes attributes = {});
  ModelBuilder &flow(std::string_view parent_id, std::string id, std::string source,
                     std::string target);
  ModelBuilder &reference(std::string_view owner_id, std::string name, std::string id,
                          std::string target);

  /// Validates and returns the model.
  Model build() const;

private:
  Element *find(std::string_view id);
  Model model_;
};

} // namespace mmc
