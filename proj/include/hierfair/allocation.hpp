#pragma once

#include <string>
#include <vector>

#include "hierfair/item_set.hpp"
#include "hierfair/tree.hpp"
#include "hierfair/valuation.hpp"

namespace hierfair {

/// Node -> bundle map. bundles[0] is the MGYS pool, bundles[i] is π(i).
struct MultilevelAllocation {
  int m = 0;
  std::vector<ItemSet> bundles;

  /// π(root) = all items, everything else (pool included) empty.
  static MultilevelAllocation root_only(const Tree& tree, int m);

  const ItemSet& operator[](NodeId i) const { return bundles.at(i); }
  ItemSet& operator[](NodeId i) { return bundles.at(i); }
  friend bool operator==(const MultilevelAllocation&, const MultilevelAllocation&) = default;
};

struct Violation {
  /// "shape", "root-owns-all", "containment" or "sibling-disjointness".
  std::string condition;
  std::vector<NodeId> nodes;
  std::string message;
};

struct ValidityReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& condition) const;
  std::string str() const;
};

/// Checks that the root owns everything, that every node's bundle contains its
/// children's, and that siblings are disjoint. A non-empty pool counts as a
/// child of the root.
ValidityReport validate_allocation(const Tree& tree, const MultilevelAllocation& alloc);

/// Shares A(i) of a source bundle S among `nodes`.
struct LocalAllocation {
  std::vector<NodeId> nodes;
  std::vector<ItemSet> shares;
  ItemSet source;

  const ItemSet& share(NodeId i) const;
  /// Shares pairwise disjoint and contained in the source.
  bool valid() const;
};

/// A(i) = π(i) for the listed nodes. The source is π(p) when every node has
/// parent p, otherwise the union of the shares.
LocalAllocation restrict_to(const Tree& tree, const MultilevelAllocation& alloc, const std::vector<NodeId>& nodes);

/// v_i(π) = sum of u_x(π(x)) over the leaves x of the subtree at i.
int node_utility(const Tree& tree, const LeafValuations& vals, const MultilevelAllocation& alloc, NodeId i);
/// node_utility for every node, indexed by id (entry 0 unused), via the children sums.
std::vector<int> node_utilities(const Tree& tree, const LeafValuations& vals, const MultilevelAllocation& alloc);

/// Leaf valuation or throw.
const Valuation& leaf_valuation(const LeafValuations& vals, NodeId leaf);

}  // namespace hierfair
