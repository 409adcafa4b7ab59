#include "hierfair/allocation.hpp"

#include <algorithm>

#include "hierfair/errors.hpp"

namespace hierfair {

MultilevelAllocation MultilevelAllocation::root_only(const Tree& tree, int m) {
  MultilevelAllocation a;
  a.m = m;
  a.bundles.assign(tree.node_count() + 1, ItemSet(m));
  a.bundles[tree.root()] = ItemSet::full(m);
  return a;
}

bool ValidityReport::has(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

std::string ValidityReport::str() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v.condition + ": " + v.message;
  }
  return s;
}

ValidityReport validate_allocation(const Tree& tree, const MultilevelAllocation& alloc) {
  ValidityReport r;
  const int n = tree.node_count();
  if (static_cast<int>(alloc.bundles.size()) != n + 1) {
    r.violations.push_back({"shape", {}, "expected " + std::to_string(n + 1) + " bundles including the pool"});
    return r;
  }
  for (NodeId i = 0; i <= n; ++i) {
    if (alloc.bundles[i].universe() != alloc.m) {
      r.violations.push_back({"shape", {i}, "bundle of node " + std::to_string(i) + " has the wrong universe"});
      return r;
    }
  }
  if (alloc.bundles[tree.root()] != ItemSet::full(alloc.m))
    r.violations.push_back({"root-owns-all", {tree.root()}, "the root does not hold every item"});

  for (NodeId i = 1; i <= n; ++i) {
    if (tree.is_leaf(i)) continue;
    std::vector<NodeId> kids = tree.children(i);
    if (i == tree.root() && !alloc.bundles[kPool].empty()) kids.insert(kids.begin(), kPool);
    for (NodeId c : kids) {
      if (!alloc.bundles[c].is_subset_of(alloc.bundles[i]))
        r.violations.push_back({"containment",
                                {i, c},
                                "node " + std::to_string(c) + " holds " + (alloc.bundles[c] - alloc.bundles[i]).str() +
                                    " outside its parent " + std::to_string(i)});
    }
    for (std::size_t a = 0; a < kids.size(); ++a)
      for (std::size_t b = a + 1; b < kids.size(); ++b) {
        ItemSet common = alloc.bundles[kids[a]] & alloc.bundles[kids[b]];
        if (!common.empty())
          r.violations.push_back({"sibling-disjointness",
                                  {kids[a], kids[b]},
                                  "siblings " + std::to_string(kids[a]) + " and " + std::to_string(kids[b]) +
                                      " share " + common.str()});
      }
  }
  return r;
}

const ItemSet& LocalAllocation::share(NodeId i) const {
  auto it = std::find(nodes.begin(), nodes.end(), i);
  if (it == nodes.end()) throw InvalidInput("node " + std::to_string(i) + " is not part of the local allocation");
  return shares[it - nodes.begin()];
}

bool LocalAllocation::valid() const {
  ItemSet seen(source.universe());
  for (const auto& s : shares) {
    if (s.intersects(seen) || !s.is_subset_of(source)) return false;
    seen |= s;
  }
  return true;
}

LocalAllocation restrict_to(const Tree& tree, const MultilevelAllocation& alloc, const std::vector<NodeId>& nodes) {
  LocalAllocation la;
  la.nodes = nodes;
  la.source = ItemSet(alloc.m);
  std::optional<NodeId> common;
  bool same_parent = !nodes.empty();
  for (NodeId i : nodes) {
    if (!tree.contains(i)) throw InvalidInput("unknown node id " + std::to_string(i));
    la.shares.push_back(alloc[i]);
    auto p = tree.parent(i);
    if (!p || (common && *common != *p)) same_parent = false;
    common = p;
  }
  if (same_parent) {
    la.source = alloc[*common];
  } else {
    for (const auto& s : la.shares) la.source |= s;
  }
  return la;
}

const Valuation& leaf_valuation(const LeafValuations& vals, NodeId leaf) {
  if (leaf < 0 || leaf >= static_cast<NodeId>(vals.size()) || !vals[leaf])
    throw InvalidInput("leaf " + std::to_string(leaf) + " has no valuation");
  return *vals[leaf];
}

int node_utility(const Tree& tree, const LeafValuations& vals, const MultilevelAllocation& alloc, NodeId i) {
  int total = 0;
  for (NodeId x : tree.leaves(i)) total += evaluate(leaf_valuation(vals, x), alloc[x]);
  return total;
}

std::vector<int> node_utilities(const Tree& tree, const LeafValuations& vals, const MultilevelAllocation& alloc) {
  std::vector<int> v(tree.node_count() + 1, 0);
  for (NodeId i = tree.node_count(); i >= 1; --i) {
    if (tree.is_leaf(i)) {
      v[i] = evaluate(leaf_valuation(vals, i), alloc[i]);
    } else {
      for (NodeId c : tree.children(i)) v[i] += v[c];
    }
  }
  return v;
}

}  // namespace hierfair
