#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/exchange.hpp"
#include "hierfair/fairness.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

/// v̂_i: the largest utilitarian welfare the leaves below node i can extract
/// from a bundle. Values are memoized per bundle together with one optimal
/// split among the leaves, which answers gains/indifferent queries with a
/// single augmenting-path search. Not thread safe; one per run.
class SubtreeWelfare final : public AgentValuation {
 public:
  SubtreeWelfare(const Tree& tree, const LeafValuations& vals, NodeId node);

  int value(const ItemSet& bundle) const override;
  bool gains(const ItemSet& bundle, Item g) const override;
  bool indifferent(const ItemSet& bundle, Item out, Item in) const override;

  NodeId node() const { return node_; }
  /// Leaf bundles of a welfare-maximizing split of `bundle`, one per leaf of
  /// the subtree in increasing id order.
  std::vector<ItemSet> optimal_split(const ItemSet& bundle) const;
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Split {
    int value = 0;
    std::vector<ItemSet> parts;  // per leaf slot
    std::vector<int> slot;       // per item, -1 when unused
  };

  const Split& split(const ItemSet& bundle) const;
  bool try_insert(Split& s, Item in) const;
  bool independent(std::size_t slot, const ItemSet& set) const;

  NodeId node_;
  std::vector<LeafAgent> leaves_;
  bool all_assignment_ = false;
  std::vector<ItemSet> all_subagents_;
  mutable std::unordered_map<ItemSet, Split, ItemSetHash> memo_;
};

/// v̂_i(S). For a leaf this is u_i(S).
int hat_v(const Tree& tree, const LeafValuations& vals, NodeId i, const ItemSet& bundle);

/// One valuation object per node: LeafAgent for leaves, SubtreeWelfare for
/// internal nodes. Index 0 (pool) is null.
class AgentTable {
 public:
  AgentTable(const Tree& tree, const LeafValuations& vals);
  const AgentValuation& operator[](NodeId i) const { return *agents_.at(i); }
  /// Raw pointers for ExchangeState, leaves only (internal nodes null).
  std::vector<const AgentValuation*> leaf_pointers() const;

 private:
  const Tree* tree_;
  std::vector<std::unique_ptr<AgentValuation>> agents_;
};

/// General Yankee Swap over `agents` (node ids, ascending) sharing S under
/// `crit`. `valuations[k]` and `weights[k]` belong to agents[k]. The result
/// is utilitarian optimal and Ψ-maximizing for the given valuations.
LocalAllocation monolevel_gys(const std::vector<NodeId>& agents, const std::vector<Rational>& weights,
                              const std::vector<const AgentValuation*>& valuations, const ItemSet& items,
                              const Criterion& crit, const Deadline& deadline = {});

}  // namespace hierfair
