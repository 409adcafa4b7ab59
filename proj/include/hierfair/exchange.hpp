#pragma once

#include <optional>
#include <vector>

#include "hierfair/errors.hpp"
#include "hierfair/item_set.hpp"
#include "hierfair/tree.hpp"
#include "hierfair/valuation.hpp"

namespace hierfair {

/// Matroid rank valuation seen through the queries the exchange graph needs.
class AgentValuation {
 public:
  virtual ~AgentValuation() = default;

  virtual int value(const ItemSet& bundle) const = 0;
  /// u(B + g) > u(B), for g ∉ B.
  virtual bool gains(const ItemSet& bundle, Item g) const;
  /// u(B - out + in) == u(B), for out ∈ B and in ∉ B.
  virtual bool indifferent(const ItemSet& bundle, Item out, Item in) const;
};

class LeafAgent final : public AgentValuation {
 public:
  explicit LeafAgent(const Valuation& val) : val_(&val) {}
  int value(const ItemSet& bundle) const override { return evaluate(*val_, bundle); }

 private:
  const Valuation* val_;
};

/// Current owners of the items taking part in an exchange graph. Agents and
/// bundles are indexed by node id; owner kPool marks items in the pool.
struct ExchangeState {
  std::vector<const AgentValuation*> agents;
  std::vector<ItemSet> bundles;
  std::vector<NodeId> owner;  // per item of the universe, -1 outside `domain`
  ItemSet domain;

  static ExchangeState with_pool(std::vector<const AgentValuation*> agents, const ItemSet& pool);
  const ItemSet& pool() const { return bundles[kPool]; }
};

/// Item sequence (g1..gt): the agent gains from g1, each owner of g_k is
/// indifferent between g_k and g_{k+1}, and g_t lies in the target.
struct TransferPath {
  NodeId agent = -1;
  std::vector<Item> items;
};

/// F_x: items outside π(x) with marginal gain 1 for x.
ItemSet gain_set(const ExchangeState& st, NodeId x);

/// Breadth-first search from F_x to `target`. Items of equal depth are
/// expanded in increasing id order and the lowest target item of the first
/// layer that reaches the target wins. Target items are not expanded.
std::optional<TransferPath> shortest_transfer_path(const ExchangeState& st, NodeId x, const ItemSet& target,
                                                   const Deadline& deadline = {});

/// One ownership change produced by an augmentation.
struct ItemMove {
  Item item;
  NodeId from;
  NodeId to;
};

/// Moves along the path: g1 to x, and g_k to the previous owner of g_{k-1}.
/// Only the flat owner map and the owners' bundles change.
std::vector<ItemMove> path_augment(ExchangeState& st, const TransferPath& path);

/// Applies moves to the bundles of all nodes: an item leaving z for z' is
/// removed on {z} ∪ Anc(z) \ ({z'} ∪ Anc(z')) and added on the converse set.
void apply_moves(const Tree& tree, std::vector<ItemSet>& bundles, const std::vector<ItemMove>& moves);

}  // namespace hierfair
