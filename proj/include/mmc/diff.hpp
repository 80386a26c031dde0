#pragma once

#include "mmc/canonical.hpp"
#include "mmc/matching.hpp"
#include "mmc/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mmc {

enum class EditKind {
  CreateElement,
  DeleteElement,
  MoveElement,
  RenameElement,
  UpdateAttribute,
  RetargetEdge,
  CreateEdge,
  DeleteEdge,
};

std::string_view to_string(EditKind kind);

struct CreatePayload {
  CanonicalPath parent;
  Metatype type = Metatype::EPackage;
  std::string name;
  Attributes attributes;
};

struct DeletePayload {
  Metatype type = Metatype::EPackage;
  std::string name;
};

struct MovePayload {
  CanonicalPath from;
  CanonicalPath to;
};

struct RenamePayload {
  std::string old_name;
  std::string new_name;
};

struct UpdatePayload {
  std::string key;
  std::optional<std::string> old_value; // nullopt: attribute added
  std::optional<std::string> new_value; // nullopt: attribute removed
};

struct RetargetPayload {
  EdgeRole role = EdgeRole::Target;
  CanonicalPath old_target;
  CanonicalPath new_target;
};

/// CreateEdge and DeleteEdge.
struct EdgePayload {
  EdgeRole role = EdgeRole::Target;
  CanonicalPath target;
};

using EditPayload = std::variant<CreatePayload, DeletePayload, MovePayload, RenamePayload,
                                 UpdatePayload, RetargetPayload, EdgePayload>;

/// One atomic change. Every path is canonical in the model state right
/// before the op is applied; for CreateElement the subject is the path the
/// new element has right after it.
struct EditOp {
  EditKind kind = EditKind::CreateElement;
  CanonicalPath subject;
  EditPayload payload;
};

/// Ops are ordered: creates (parents first), moves, renames, attribute
/// updates, edge deletions, retargets, edge creations, element deletions
/// (children first).
struct EditScript {
  std::vector<EditOp> ops;

  bool empty() const { return ops.empty(); }
  std::size_t size() const { return ops.size(); }
};

/// Throws Error(InconsistentMatching) unless `m` is a valid matching of
/// (old, new) whose edge-bearing pairs went through match_edges.
EditScript derive_edit_script(const ModelIndex &old_model, const ModelIndex &new_model,
                              const Matching &m);

/// Throws Error(UnresolvablePath) or Error(InvariantViolation).
Model apply_edit_script(const Model &old_model, const EditScript &script);

/// Matches with `cfg` and derives the script.
EditScript diff_models(const Model &old_model, const Model &new_model, const MatcherConfig &cfg,
                       Execution exec = Execution::Parallel);

enum class ScriptFormat { Text, Json };

/// Text: one op per line. Json: an array of {kind, subject, payload}.
std::string format_script(const EditScript &script, ScriptFormat format);

} // namespace mmc
