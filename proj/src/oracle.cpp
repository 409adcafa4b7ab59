#include "hierfair/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "hierfair/errors.hpp"

namespace hierfair {
namespace {

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int k = 0; k < exp; ++k) {
    if (total > budget / base) throw BudgetExceeded("local enumeration exceeds the budget of " + std::to_string(budget));
    total *= base;
  }
  if (total > budget) throw BudgetExceeded("local enumeration exceeds the budget of " + std::to_string(budget));
  return total;
}

// Calls visit(choice) for every vector in {0..k}^len, with k meaning "nobody".
template <class F>
void odometer(int len, int k, F&& visit) {
  std::vector<int> choice(len, 0);
  while (true) {
    visit(choice);
    int pos = 0;
    while (pos < len && ++choice[pos] > k) choice[pos++] = 0;
    if (pos == len) return;
  }
}

}  // namespace

std::uint64_t enumerate_local(const ItemSet& items, const std::vector<NodeId>& nodes,
                              const std::function<void(const LocalAllocation&)>& visit, std::uint64_t budget) {
  const auto list = items.items();
  const int k = static_cast<int>(nodes.size());
  checked_power(k + 1, static_cast<int>(list.size()), budget);
  std::uint64_t count = 0;
  LocalAllocation la;
  la.nodes = nodes;
  la.source = items;
  odometer(static_cast<int>(list.size()), k, [&](const std::vector<int>& choice) {
    la.shares.assign(k, ItemSet(items.universe()));
    for (std::size_t p = 0; p < list.size(); ++p)
      if (choice[p] < k) la.shares[choice[p]].insert(list[p]);
    ++count;
    visit(la);
  });
  return count;
}

BruteWelfare::BruteWelfare(const Tree& tree, const LeafValuations& vals, int m)
    : tree_(&tree), vals_(&vals), m_(m), memo_(tree.node_count() + 1) {
  if (m > 20) throw BudgetExceeded("brute-force welfare is limited to 20 items");
}

int BruteWelfare::value(NodeId i, const ItemSet& bundle) {
  std::uint64_t mask = bundle.to_mask();
  return table(i, mask).back();
}

// table[u] for every u ⊆ bundle, indexed by the rank of u among the subsets
// of the bundle (bit k of the index = k-th item of the bundle).
const std::vector<int>& BruteWelfare::table(NodeId i, std::uint64_t bundle) {
  auto it = memo_[i].find(bundle);
  if (it != memo_[i].end()) return it->second;
  std::vector<Item> items;
  for (int g = 0; g < m_; ++g)
    if (bundle >> g & 1U) items.push_back(g);
  const int s = static_cast<int>(items.size());
  const std::uint32_t subsets = 1U << s;
  auto to_set = [&](std::uint32_t local) {
    ItemSet set(m_);
    for (int k = 0; k < s; ++k)
      if (local >> k & 1U) set.insert(items[k]);
    return set;
  };

  std::vector<int> acc(subsets, 0);
  bool first = true;
  for (NodeId x : tree_->leaves(i)) {
    std::vector<int> mine(subsets);
    for (std::uint32_t u = 0; u < subsets; ++u) mine[u] = evaluate(leaf_valuation(*vals_, x), to_set(u));
    if (first) {
      acc = mine;
      first = false;
      continue;
    }
    std::vector<int> next(subsets, 0);
    for (std::uint32_t t = 0; t < subsets; ++t) {
      // all u ⊆ t
      for (std::uint32_t u = t;; u = (u - 1) & t) {
        next[t] = std::max(next[t], acc[t & ~u] + mine[u]);
        if (u == 0) break;
      }
    }
    acc = std::move(next);
  }
  return memo_[i].emplace(bundle, std::move(acc)).first->second;
}

const NodeVerdict& OracleVerdict::at(NodeId i) const {
  for (const auto& v : nodes)
    if (v.node == i) return v;
  throw InvalidInput("no verdict for node " + std::to_string(i));
}

OracleVerdict check_allocation(const Instance& inst, const MultilevelAllocation& alloc, std::uint64_t budget) {
  validate_instance(inst);
  const Tree& t = inst.tree;
  auto validity = validate_allocation(t, alloc);
  if (!validity.ok()) throw InvalidInput("allocation is not a multilevel allocation: " + validity.str());
  BruteWelfare brute(t, inst.valuations, inst.m);
  const auto util = node_utilities(t, inst.valuations, alloc);

  OracleVerdict verdict;
  for (NodeId i : t.internal_nodes()) {
    const auto& kids = t.children(i);
    const Criterion& crit = t.criterion(i);
    std::vector<Rational> weights;
    NodeVerdict nv;
    nv.node = i;
    for (NodeId c : kids) {
      weights.push_back(t.weight(c));
      nv.actual.push_back(util[c]);
    }
    const int actual_sum = std::accumulate(nv.actual.begin(), nv.actual.end(), 0);
    std::vector<int> cand(kids.size());
    bool have_best = false;
    enumerate_local(
        alloc[i], kids,
        [&](const LocalAllocation& la) {
          for (std::size_t k = 0; k < kids.size(); ++k) cand[k] = brute.value(kids[k], la.shares[k]);
          int sum = std::accumulate(cand.begin(), cand.end(), 0);
          nv.best_welfare = std::max(nv.best_welfare, sum);
          if (!have_best || compare(crit, cand, nv.best, weights) > 0) {
            nv.best = cand;
            have_best = true;
          }
          if (!nv.witness && compare(crit, cand, nv.actual, weights) > 0) nv.witness = la;
        },
        budget);
    nv.utilitarian = actual_sum >= nv.best_welfare;
    nv.psi = !nv.witness.has_value();
    verdict.utilitarian_optimal = verdict.utilitarian_optimal && nv.utilitarian;
    verdict.psi_maximizing = verdict.psi_maximizing && nv.psi;
    verdict.nodes.push_back(std::move(nv));
  }
  return verdict;
}

}  // namespace hierfair
