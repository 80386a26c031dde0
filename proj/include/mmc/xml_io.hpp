#pragma once

#include "mmc/model.hpp"

#include <string>
#include <string_view>

namespace mmc {

/// Reads one interchange document. Throws Error (MalformedDocument,
/// UnknownMetatype, ContainmentViolation, DanglingEdge, MissingName).
Model parse_model(std::string_view text);

/// Deterministic rendering: children in model order; attributes in the
/// order id, name, model attributes (sorted), source, target.
std::string serialize_model(const Model &model);

Model load_model_file(const std::string &path);

} // namespace mmc
