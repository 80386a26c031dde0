#pragma once

#include "mmc/model.hpp"
#include "mmc/model_index.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace mmc {

struct PathStep {
  Metatype type = Metatype::EPackage;
  std::string name;
  int ordinal = 0; // among siblings with equal (type, name), in canonical order

  friend bool operator==(const PathStep &, const PathStep &) = default;
};

/// Structural address of one element, independent of local ids.
struct CanonicalPath {
  std::vector<PathStep> steps;

  /// Human-readable form, e.g. "/de/shop/DomesticAnimal" or
  /// "/Order/sequenceflow[1]". Unnamed steps use the document tag.
  std::string str() const;
  /// Unambiguous encoding used for lookups and fingerprints.
  std::string key() const;
  /// Last step as rendered by str().
  std::string label() const;
  CanonicalPath parent() const;

  friend bool operator==(const CanonicalPath &, const CanonicalPath &) = default;
};

/// Canonical child order and canonical paths of every node of a model.
///
/// Children are ordered by (metatype, name, colour). Colours come from
/// iterated refinement over containment and edges: an element's colour
/// combines its own content with the colours of its parent, children and
/// edge neighbours, and is ranked among all signatures so that isomorphic
/// models get identical colours. Same-named siblings that stay tied are
/// individualized one at a time until every sibling group is discrete.
class CanonicalLayout {
public:
  explicit CanonicalLayout(const ModelIndex &index);

  const ModelIndex &index() const { return *index_; }
  const CanonicalPath &path(int node) const { return paths_[static_cast<std::size_t>(node)]; }
  const std::vector<int> &sorted_children(int node) const {
    return order_[static_cast<std::size_t>(node)];
  }
  /// Encodes the whole canonical subtree below `node`, with edge targets
  /// written as canonical paths.
  const std::string &fingerprint(int node) const {
    return fingerprints_[static_cast<std::size_t>(node)];
  }
  std::optional<int> resolve(const CanonicalPath &path) const;

private:
  void refine();
  int first_tied_sibling() const;
  void arrange();
  void compute_fingerprints();

  const ModelIndex *index_;
  std::vector<std::string> base_;
  std::vector<std::vector<std::pair<EdgeRole, int>>> incoming_;
  std::vector<int> colour_;
  std::vector<int> individual_;
  std::vector<std::string> fingerprints_;
  std::vector<std::vector<int>> order_;
  std::vector<CanonicalPath> paths_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, int> by_key_;
};

/// Sorted children, ids dropped except on edge targets, which are named by
/// their canonical path.
Model canonicalize(const Model &model);

bool models_equivalent(const Model &a, const Model &b);

} // namespace mmc
