#pragma once

#include <optional>
#include <vector>

#include "hierfair/fairness.hpp"
#include "hierfair/rational.hpp"

namespace hierfair {

/// Id of the auxiliary pool node used by MGYS. Its parent is the root.
inline constexpr NodeId kPool = 0;

struct NodeSpec {
  NodeId id = 0;
  std::optional<NodeId> parent;
  Rational weight = 1;
  std::optional<Criterion> criterion;
};

/// Rooted arborescence over nodes 1..n, numbered so that parent < child and
/// the root is 1. Internal nodes carry a fairness criterion, leaves do not.
/// Immutable once built.
class Tree {
 public:
  Tree() = default;

  /// Nodes may be listed in any order but their ids must be exactly 1..n.
  static Tree build(std::vector<NodeSpec> nodes);
  /// Root 1 with leaves 2..k+1. `weights` defaults to all ones.
  static Tree star(int leaves, const Criterion& root_criterion, std::vector<Rational> weights = {});

  /// n, not counting the pool.
  int node_count() const { return static_cast<int>(parent_.size()) - 1; }
  NodeId root() const { return 1; }
  bool contains(NodeId i) const { return i >= 1 && i <= node_count(); }

  /// Parent id, kPool's parent being the root. The root has none.
  std::optional<NodeId> parent(NodeId i) const;
  const Rational& weight(NodeId i) const;
  bool is_leaf(NodeId i) const;
  /// Throws for leaves.
  const Criterion& criterion(NodeId i) const;
  const std::optional<Criterion>& criterion_or_none(NodeId i) const;

  /// 𝒞(i) in increasing id order.
  const std::vector<NodeId>& children(NodeId i) const;
  /// ℒ(i): leaves of the subtree rooted at i, increasing. {i} for a leaf.
  const std::vector<NodeId>& leaves(NodeId i) const;
  /// ℐ(i): internal nodes of the subtree rooted at i, increasing.
  const std::vector<NodeId>& internal_nodes(NodeId i) const;
  const std::vector<NodeId>& leaves() const { return leaves(root()); }
  const std::vector<NodeId>& internal_nodes() const { return internal_nodes(root()); }
  /// Strict ancestors, nearest first. ancestors(kPool) = {root}.
  const std::vector<NodeId>& ancestors(NodeId i) const;
  bool is_ancestor(NodeId a, NodeId i) const;
  /// Depth from the root (root = 0).
  int depth(NodeId i) const;
  /// Height of the subtree rooted at i (leaf = 0).
  int height(NodeId i) const;

  std::vector<NodeSpec> specs() const;

 private:
  void check(NodeId i) const;
  void check_or_pool(NodeId i) const;

  std::vector<std::optional<NodeId>> parent_;  // index 0 = pool
  std::vector<Rational> weight_;
  std::vector<std::optional<Criterion>> criterion_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> leaves_;
  std::vector<std::vector<NodeId>> internal_;
  std::vector<std::vector<NodeId>> ancestors_;
  std::vector<int> depth_;
  std::vector<int> height_;
};

}  // namespace hierfair
