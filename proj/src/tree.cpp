#include "hierfair/tree.hpp"

#include <algorithm>
#include <string>

#include "hierfair/errors.hpp"

namespace hierfair {

Tree Tree::build(std::vector<NodeSpec> nodes) {
  if (nodes.empty()) throw InvalidInput("tree has no nodes");
  const int n = static_cast<int>(nodes.size());
  std::sort(nodes.begin(), nodes.end(), [](const NodeSpec& a, const NodeSpec& b) { return a.id < b.id; });
  for (int k = 0; k < n; ++k) {
    const NodeSpec& s = nodes[k];
    if (k > 0 && s.id == nodes[k - 1].id) throw InvalidInput("duplicate node id " + std::to_string(s.id));
    if (s.id != k + 1) throw InvalidInput("node ids must be exactly 1.." + std::to_string(n));
  }

  Tree t;
  t.parent_.assign(n + 1, std::nullopt);
  t.weight_.assign(n + 1, Rational(1));
  t.criterion_.assign(n + 1, std::nullopt);
  t.children_.assign(n + 1, {});
  t.parent_[kPool] = 1;

  for (const NodeSpec& s : nodes) {
    const std::string who = "node " + std::to_string(s.id);
    if (s.id == 1) {
      if (s.parent) throw InvalidInput("the root (node 1) cannot have a parent");
    } else {
      if (!s.parent) throw InvalidInput(who + " has no parent; only node 1 may be the root");
      if (*s.parent < 1 || *s.parent > n) throw InvalidInput(who + " has unknown parent " + std::to_string(*s.parent));
      if (*s.parent >= s.id) throw InvalidInput(who + " is not topologically numbered (parent id must be smaller)");
      t.children_[*s.parent].push_back(s.id);
    }
    if (s.weight <= Rational(0)) throw InvalidInput(who + " has a non-positive weight");
    t.parent_[s.id] = s.parent;
    t.weight_[s.id] = s.weight;
  }
  for (const NodeSpec& s : nodes) {
    bool leaf = t.children_[s.id].empty();
    if (leaf && s.criterion) throw InvalidInput("leaf " + std::to_string(s.id) + " must not carry a criterion");
    if (!leaf && !s.criterion) throw InvalidInput("internal node " + std::to_string(s.id) + " needs a criterion");
    t.criterion_[s.id] = s.criterion;
  }

  t.leaves_.assign(n + 1, {});
  t.internal_.assign(n + 1, {});
  t.height_.assign(n + 1, 0);
  t.depth_.assign(n + 1, 0);
  t.ancestors_.assign(n + 1, {});
  t.ancestors_[kPool] = {1};
  t.depth_[kPool] = 1;
  for (NodeId i = 2; i <= n; ++i) {
    NodeId p = *t.parent_[i];
    t.depth_[i] = t.depth_[p] + 1;
    t.ancestors_[i].push_back(p);
    t.ancestors_[i].insert(t.ancestors_[i].end(), t.ancestors_[p].begin(), t.ancestors_[p].end());
  }
  // Children have larger ids, so a reverse sweep sees every subtree before its root.
  for (NodeId i = n; i >= 1; --i) {
    if (t.children_[i].empty()) {
      t.leaves_[i] = {i};
      continue;
    }
    t.internal_[i].push_back(i);
    for (NodeId c : t.children_[i]) {
      t.leaves_[i].insert(t.leaves_[i].end(), t.leaves_[c].begin(), t.leaves_[c].end());
      t.internal_[i].insert(t.internal_[i].end(), t.internal_[c].begin(), t.internal_[c].end());
      t.height_[i] = std::max(t.height_[i], t.height_[c] + 1);
    }
    std::sort(t.leaves_[i].begin(), t.leaves_[i].end());
    std::sort(t.internal_[i].begin(), t.internal_[i].end());
  }
  return t;
}

Tree Tree::star(int leaves, const Criterion& root_criterion, std::vector<Rational> weights) {
  if (leaves < 1) throw InvalidInput("a star needs at least one leaf");
  if (weights.empty()) weights.assign(leaves, Rational(1));
  if (static_cast<int>(weights.size()) != leaves) throw InvalidInput("star weight count mismatch");
  std::vector<NodeSpec> specs;
  specs.push_back({1, std::nullopt, Rational(1), root_criterion});
  for (int k = 0; k < leaves; ++k) specs.push_back({k + 2, 1, weights[k], std::nullopt});
  return build(std::move(specs));
}

void Tree::check(NodeId i) const {
  if (!contains(i)) throw InvalidInput("unknown node id " + std::to_string(i));
}

void Tree::check_or_pool(NodeId i) const {
  if (i != kPool) check(i);
}

std::optional<NodeId> Tree::parent(NodeId i) const {
  check_or_pool(i);
  return parent_[i];
}

const Rational& Tree::weight(NodeId i) const {
  check(i);
  return weight_[i];
}

bool Tree::is_leaf(NodeId i) const {
  check(i);
  return children_[i].empty();
}

const Criterion& Tree::criterion(NodeId i) const {
  check(i);
  if (!criterion_[i]) throw InvalidInput("node " + std::to_string(i) + " is a leaf and has no criterion");
  return *criterion_[i];
}

const std::optional<Criterion>& Tree::criterion_or_none(NodeId i) const {
  check(i);
  return criterion_[i];
}

const std::vector<NodeId>& Tree::children(NodeId i) const {
  check(i);
  return children_[i];
}

const std::vector<NodeId>& Tree::leaves(NodeId i) const {
  check(i);
  return leaves_[i];
}

const std::vector<NodeId>& Tree::internal_nodes(NodeId i) const {
  check(i);
  return internal_[i];
}

const std::vector<NodeId>& Tree::ancestors(NodeId i) const {
  check_or_pool(i);
  return ancestors_[i];
}

bool Tree::is_ancestor(NodeId a, NodeId i) const {
  const auto& anc = ancestors(i);
  return std::find(anc.begin(), anc.end(), a) != anc.end();
}

int Tree::depth(NodeId i) const {
  check_or_pool(i);
  return depth_[i];
}

int Tree::height(NodeId i) const {
  check(i);
  return height_[i];
}

std::vector<NodeSpec> Tree::specs() const {
  std::vector<NodeSpec> out;
  for (NodeId i = 1; i <= node_count(); ++i) out.push_back({i, parent_[i], weight_[i], criterion_[i]});
  return out;
}

}  // namespace hierfair
