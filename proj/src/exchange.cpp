#include "hierfair/exchange.hpp"

#include <algorithm>

namespace hierfair {

bool AgentValuation::gains(const ItemSet& bundle, Item g) const { return value(bundle.with(g)) > value(bundle); }

bool AgentValuation::indifferent(const ItemSet& bundle, Item out, Item in) const {
  ItemSet swapped = bundle.without(out);
  swapped.insert(in);
  return value(swapped) == value(bundle);
}

ExchangeState ExchangeState::with_pool(std::vector<const AgentValuation*> agents, const ItemSet& pool) {
  ExchangeState st;
  const int m = pool.universe();
  st.bundles.assign(agents.size(), ItemSet(m));
  st.agents = std::move(agents);
  st.owner.assign(m, -1);
  st.domain = pool;
  st.bundles[kPool] = pool;
  pool.for_each([&](Item g) { st.owner[g] = kPool; });
  return st;
}

ItemSet gain_set(const ExchangeState& st, NodeId x) {
  const AgentValuation& agent = *st.agents.at(x);
  const ItemSet& own = st.bundles[x];
  ItemSet f(st.domain.universe());
  (st.domain - own).for_each([&](Item g) {
    if (agent.gains(own, g)) f.insert(g);
  });
  return f;
}

std::optional<TransferPath> shortest_transfer_path(const ExchangeState& st, NodeId x, const ItemSet& target,
                                                   const Deadline& deadline) {
  const int m = st.domain.universe();
  std::vector<Item> from(m, -1);
  ItemSet visited = gain_set(st, x);
  std::vector<Item> layer = visited.items();

  auto build = [&](Item end) {
    TransferPath p;
    p.agent = x;
    for (Item g = end; g >= 0; g = from[g]) p.items.push_back(g);
    std::reverse(p.items.begin(), p.items.end());
    return p;
  };

  while (!layer.empty()) {
    for (Item g : layer)
      if (target.contains(g)) return build(g);  // layers are sorted, so this is the lowest
    deadline.check();
    std::vector<Item> next;
    for (Item g : layer) {
      NodeId y = st.owner[g];
      if (y <= kPool) continue;
      const AgentValuation& agent = *st.agents[y];
      (st.domain - visited - st.bundles[y]).for_each([&](Item h) {
        if (agent.indifferent(st.bundles[y], g, h)) {
          visited.insert(h);
          from[h] = g;
          next.push_back(h);
        }
      });
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return std::nullopt;
}

std::vector<ItemMove> path_augment(ExchangeState& st, const TransferPath& path) {
  if (path.items.empty()) throw InvalidInput("empty transfer path");
  std::vector<ItemMove> moves;
  NodeId receiver = path.agent;
  for (Item g : path.items) {
    if (!st.domain.contains(g)) throw InvalidInput("transfer path leaves the exchange graph");
    NodeId prev = st.owner[g];
    if (prev == receiver) throw InvalidInput("malformed transfer path");
    moves.push_back({g, prev, receiver});
    receiver = prev;
  }
  for (const auto& mv : moves) {
    st.bundles[mv.from].erase(mv.item);
    st.bundles[mv.to].insert(mv.item);
    st.owner[mv.item] = mv.to;
  }
  return moves;
}

void apply_moves(const Tree& tree, std::vector<ItemSet>& bundles, const std::vector<ItemMove>& moves) {
  auto chain = [&](NodeId z) {
    std::vector<NodeId> c = tree.ancestors(z);
    c.push_back(z);
    return c;
  };
  for (const auto& mv : moves) {
    auto out = chain(mv.from), in = chain(mv.to);
    for (NodeId a : out)
      if (std::find(in.begin(), in.end(), a) == in.end()) bundles[a].erase(mv.item);
    for (NodeId a : in)
      if (std::find(out.begin(), out.end(), a) == out.end()) bundles[a].insert(mv.item);
  }
}

}  // namespace hierfair
