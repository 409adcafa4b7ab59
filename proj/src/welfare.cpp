#include "hierfair/welfare.hpp"

#include <algorithm>
#include <deque>
#include <variant>

namespace hierfair {

SubtreeWelfare::SubtreeWelfare(const Tree& tree, const LeafValuations& vals, NodeId node) : node_(node) {
  all_assignment_ = true;
  for (NodeId x : tree.leaves(node)) {
    const Valuation& v = leaf_valuation(vals, x);
    leaves_.emplace_back(v);
    if (auto* a = std::get_if<BinaryAssignment>(&v)) {
      all_subagents_.insert(all_subagents_.end(), a->subagents.begin(), a->subagents.end());
    } else {
      all_assignment_ = false;
    }
  }
  if (!all_assignment_) all_subagents_.clear();
}

bool SubtreeWelfare::independent(std::size_t slot, const ItemSet& set) const {
  return leaves_[slot].value(set) == set.size();
}

// Matroid partition step: find a shortest chain in -> g1 -> ... -> gk where each
// displaced item moves to a leaf that can absorb it, the last one without
// giving anything up.
bool SubtreeWelfare::try_insert(Split& s, Item in) const {
  const int m = static_cast<int>(s.slot.size());
  std::vector<Item> from(m, -1);
  std::vector<char> seen(m, 0);
  std::deque<Item> queue{in};
  seen[in] = 1;
  while (!queue.empty()) {
    Item h = queue.front();
    queue.pop_front();
    for (std::size_t z = 0; z < leaves_.size(); ++z) {
      if (s.slot[h] == static_cast<int>(z)) continue;
      if (independent(z, s.parts[z].with(h))) {
        int dest = static_cast<int>(z);
        for (Item cur = h;;) {
          int old = s.slot[cur];
          if (old >= 0) s.parts[old].erase(cur);
          s.parts[dest].insert(cur);
          s.slot[cur] = dest;
          if (from[cur] < 0) break;
          dest = old;
          cur = from[cur];
        }
        return true;
      }
      s.parts[z].for_each([&](Item g) {
        if (seen[g]) return;
        ItemSet swapped = s.parts[z].without(g);
        swapped.insert(h);
        if (independent(z, swapped)) {
          seen[g] = 1;
          from[g] = h;
          queue.push_back(g);
        }
      });
    }
  }
  return false;
}

const SubtreeWelfare::Split& SubtreeWelfare::split(const ItemSet& bundle) const {
  auto it = memo_.find(bundle);
  if (it != memo_.end()) return it->second;
  Split s;
  s.parts.assign(leaves_.size(), ItemSet(bundle.universe()));
  s.slot.assign(bundle.universe(), -1);
  bundle.for_each([&](Item g) {
    if (try_insert(s, g)) ++s.value;
  });
  return memo_.emplace(bundle, std::move(s)).first->second;
}

int SubtreeWelfare::value(const ItemSet& bundle) const {
  if (all_assignment_) {
    auto it = memo_.find(bundle);
    if (it != memo_.end()) return it->second.value;
    Split s;
    s.value = maximum_matching(all_subagents_, bundle);
    return memo_.emplace(bundle, std::move(s)).first->second.value;
  }
  return split(bundle).value;
}

bool SubtreeWelfare::gains(const ItemSet& bundle, Item g) const {
  if (all_assignment_) return AgentValuation::gains(bundle, g);
  Split s = split(bundle);
  return try_insert(s, g);
}

bool SubtreeWelfare::indifferent(const ItemSet& bundle, Item out, Item in) const {
  if (all_assignment_) return AgentValuation::indifferent(bundle, out, in);
  const Split& base = split(bundle);
  if (base.slot[out] < 0) {
    // out is not used by the split, which therefore stays optimal for B - out.
    Split s = base;
    return !try_insert(s, in);
  }
  if (base.value != bundle.size()) return AgentValuation::indifferent(bundle, out, in);
  // B is independent, so the split minus out is optimal for B - out.
  Split s = base;
  s.parts[s.slot[out]].erase(out);
  s.slot[out] = -1;
  return try_insert(s, in);
}

std::vector<ItemSet> SubtreeWelfare::optimal_split(const ItemSet& bundle) const {
  if (!all_assignment_) return split(bundle).parts;
  // Fall back to the generic construction for the all-matching subtree.
  Split s;
  s.parts.assign(leaves_.size(), ItemSet(bundle.universe()));
  s.slot.assign(bundle.universe(), -1);
  bundle.for_each([&](Item g) { try_insert(s, g); });
  return s.parts;
}

int hat_v(const Tree& tree, const LeafValuations& vals, NodeId i, const ItemSet& bundle) {
  if (tree.is_leaf(i)) return evaluate(leaf_valuation(vals, i), bundle);
  return SubtreeWelfare(tree, vals, i).value(bundle);
}

AgentTable::AgentTable(const Tree& tree, const LeafValuations& vals) : tree_(&tree) {
  agents_.resize(tree.node_count() + 1);
  for (NodeId i = 1; i <= tree.node_count(); ++i) {
    if (tree.is_leaf(i)) {
      agents_[i] = std::make_unique<LeafAgent>(leaf_valuation(vals, i));
    } else {
      agents_[i] = std::make_unique<SubtreeWelfare>(tree, vals, i);
    }
  }
}

std::vector<const AgentValuation*> AgentTable::leaf_pointers() const {
  std::vector<const AgentValuation*> out(agents_.size(), nullptr);
  for (NodeId i = 1; i < static_cast<NodeId>(agents_.size()); ++i)
    if (tree_->is_leaf(i)) out[i] = agents_[i].get();
  return out;
}

}  // namespace hierfair
