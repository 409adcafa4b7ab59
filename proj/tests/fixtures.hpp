#pragma once

#include <string>
#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/instance.hpp"

namespace fixtures {

using namespace hierfair;

// University: root 1, departments 2 (humanities) and 3 (computer science),
// labs 4, 5 under 2 and 6, 7 under 3. Items a..f are ids 0..5.
inline Instance university(const Criterion& crit = Criterion::lorenz()) {
  Instance inst;
  inst.m = 6;
  inst.item_names = {"a", "b", "c", "d", "e", "f"};
  inst.tree = Tree::build({
      {1, std::nullopt, 1, crit},
      {2, 1, 1, crit},
      {3, 1, 1, crit},
      {4, 2, 1, std::nullopt},
      {5, 2, 1, std::nullopt},
      {6, 3, 1, std::nullopt},
      {7, 3, 1, std::nullopt},
  });
  inst.valuations.assign(8, std::nullopt);
  inst.valuations[4] = BinaryAdditive{ItemSet::full(6)};
  inst.valuations[5] = BinaryAdditive{ItemSet(6, {1, 2, 3, 4, 5})};
  inst.valuations[6] = BinaryAdditive{ItemSet::full(6)};
  inst.valuations[7] = BinaryAdditive{ItemSet::full(6)};
  return inst;
}

// Five items g1..g5 (ids 0..4), weights 5 and 2 on the departments, weighted
// Nash at the root and Lorenz below. Leaves 4, 5, 6 want g1..g3 and leaf 7
// wants g3..g5.
inline Instance nash_example(const Criterion& root = Criterion::weighted_nash(),
                             const Criterion& below = Criterion::lorenz()) {
  Instance inst;
  inst.m = 5;
  inst.item_names = {"g1", "g2", "g3", "g4", "g5"};
  inst.tree = Tree::build({
      {1, std::nullopt, 1, root},
      {2, 1, 5, below},
      {3, 1, 2, below},
      {4, 2, 1, std::nullopt},
      {5, 2, 1, std::nullopt},
      {6, 3, 1, std::nullopt},
      {7, 3, 1, std::nullopt},
  });
  inst.valuations.assign(8, std::nullopt);
  for (NodeId x : {4, 5, 6}) inst.valuations[x] = BinaryAdditive{ItemSet(5, {0, 1, 2})};
  inst.valuations[7] = BinaryAdditive{ItemSet(5, {2, 3, 4})};
  return inst;
}

inline std::vector<int> leaf_profile(const std::vector<int>& utilities, const std::vector<NodeId>& leaves) {
  std::vector<int> out;
  for (NodeId x : leaves) out.push_back(utilities[x]);
  return out;
}

// Internal bundles are the unions of their leaves, the root gets everything.
inline MultilevelAllocation from_leaves(const Tree& tree, int m, const std::vector<std::pair<NodeId, ItemSet>>& leaves) {
  auto pi = MultilevelAllocation::root_only(tree, m);
  for (const auto& [x, s] : leaves) {
    pi[x] = s;
    for (NodeId a : tree.ancestors(x))
      if (a != tree.root()) pi[a] |= s;
  }
  return pi;
}

// The three university allocations compared in the worked example.
inline MultilevelAllocation university_pi(const Tree& t) {
  return from_leaves(t, 6, {{4, ItemSet(6, {0})}, {5, ItemSet(6, {1})}, {6, ItemSet(6, {2, 3, 4, 5})}});
}
inline MultilevelAllocation university_pi_prime(const Tree& t) {
  return from_leaves(t, 6, {{4, ItemSet(6, {1})}, {5, ItemSet(6, {0})}, {6, ItemSet(6, {2, 3, 4, 5})}});
}
inline MultilevelAllocation university_pi_second(const Tree& t) {
  return from_leaves(t, 6,
                     {{4, ItemSet(6, {0})}, {5, ItemSet(6, {1})}, {6, ItemSet(6, {2, 3})}, {7, ItemSet(6, {4, 5})}});
}

}  // namespace fixtures
