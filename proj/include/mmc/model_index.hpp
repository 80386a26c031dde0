#pragma once

#include "mmc/model.hpp"

#include <string_view>
#include <unordered_map>
#include <vector>

namespace mmc {

inline constexpr int kNoNode = -1;

struct IndexedNode {
  const Element *element = nullptr;
  int parent = kNoNode;
  int slot = 0; // position among the parent's children
  int depth = 0;
  std::vector<int> children;
  int source = kNoNode; // resolved edge endpoints, kNoNode when absent or dangling
  int target = kNoNode;
};

/// Flat depth-first view of a model. Node 0 is the root and node numbers are
/// the document order. The view borrows the model; it must not outlive it or
/// survive a mutation of it.
class ModelIndex {
public:
  explicit ModelIndex(const Model &model);

  std::size_t size() const { return nodes_.size(); }
  const IndexedNode &operator[](int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const Element &element(int i) const { return *(*this)[i].element; }
  Metatype type(int i) const { return element(i).type; }
  const std::string &name(int i) const { return element(i).name; }
  int endpoint(int i, EdgeRole role) const;

  /// kNoNode when the id is unknown.
  int find_id(std::string_view id) const;
  /// Slots from the root down to `i`.
  std::vector<int> route(int i) const;
  /// Whether `ancestor` is `node` or one of its ancestors.
  bool contains(int ancestor, int node) const;

  const Model &model() const { return *model_; }

private:
  const Model *model_;
  std::vector<IndexedNode> nodes_;
  std::unordered_map<std::string_view, int> by_id_;
};

/// Follows `route` from the root of a mutable tree.
Element &element_at(Element &root, const std::vector<int> &route);

} // namespace mmc
