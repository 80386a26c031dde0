#include "mmc/model_index.hpp"

#include <algorithm>

namespace mmc {

ModelIndex::ModelIndex(const Model &model) : model_(&model) {
  struct Frame {
    const Element *element;
    int parent;
    int slot;
    int depth;
  };
  std::vector<Frame> stack{{&model.root, kNoNode, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const int self = static_cast<int>(nodes_.size());
    IndexedNode node;
    node.element = f.element;
    node.parent = f.parent;
    node.slot = f.slot;
    node.depth = f.depth;
    nodes_.push_back(std::move(node));
    if (f.parent != kNoNode)
      nodes_[static_cast<std::size_t>(f.parent)].children.push_back(self);
    if (!f.element->id.empty())
      by_id_.emplace(f.element->id, self);
    const auto &kids = f.element->children;
    for (std::size_t k = kids.size(); k-- > 0;)
      stack.push_back({&kids[k], self, static_cast<int>(k), f.depth + 1});
  }
  for (IndexedNode &node : nodes_) {
    for (const Edge &e : node.element->edges) {
      const int hit = find_id(e.target);
      (e.role == EdgeRole::Source ? node.source : node.target) = hit;
    }
  }
}

int ModelIndex::endpoint(int i, EdgeRole role) const {
  return role == EdgeRole::Source ? (*this)[i].source : (*this)[i].target;
}

int ModelIndex::find_id(std::string_view id) const {
  if (id.empty())
    return kNoNode;
  auto it = by_id_.find(id);
  return it == by_id_.end() ? kNoNode : it->second;
}

std::vector<int> ModelIndex::route(int i) const {
  std::vector<int> slots;
  for (int n = i; (*this)[n].parent != kNoNode; n = (*this)[n].parent)
    slots.push_back((*this)[n].slot);
  std::reverse(slots.begin(), slots.end());
  return slots;
}

bool ModelIndex::contains(int ancestor, int node) const {
  for (int n = node; n != kNoNode; n = (*this)[n].parent)
    if (n == ancestor)
      return true;
  return false;
}

Element &element_at(Element &root, const std::vector<int> &route) {
  Element *e = &root;
  for (int slot : route)
    e = &e->children.at(static_cast<std::size_t>(slot));
  return *e;
}

} // namespace mmc
