#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

/// Visits every assignment of each item of S to one of `nodes` or to nobody,
/// exactly once. Returns the number visited. Throws BudgetExceeded when
/// (|nodes|+1)^|S| is above `budget`.
std::uint64_t enumerate_local(const ItemSet& items, const std::vector<NodeId>& nodes,
                              const std::function<void(const LocalAllocation&)>& visit,
                              std::uint64_t budget = kDefaultEnumerationBudget);

/// Exhaustive v̂: the best total leaf utility over every split of a bundle
/// among the leaves of a subtree, by subset convolution. Shares no code with
/// the augmenting-path computation. Universe limited to 20 items.
class BruteWelfare {
 public:
  BruteWelfare(const Tree& tree, const LeafValuations& vals, int m);
  int value(NodeId i, const ItemSet& bundle);

 private:
  const std::vector<int>& table(NodeId i, std::uint64_t bundle);

  const Tree* tree_;
  const LeafValuations* vals_;
  int m_;
  std::vector<std::unordered_map<std::uint64_t, std::vector<int>>> memo_;
};

struct NodeVerdict {
  NodeId node = 0;
  bool utilitarian = true;
  bool psi = true;
  /// Children's v_j under the checked allocation.
  std::vector<int> actual;
  /// Best children profile (by the node's criterion) over every split of π(i),
  /// each child valued at its v̂ on its share.
  std::vector<int> best;
  int best_welfare = 0;
  /// A split of π(i) strictly preferred to the checked one, when psi is false.
  std::optional<LocalAllocation> witness;
};

struct OracleVerdict {
  bool utilitarian_optimal = true;
  bool psi_maximizing = true;
  std::vector<NodeVerdict> nodes;  // internal nodes, increasing id
  const NodeVerdict& at(NodeId i) const;
};

/// Exhaustive multilevel utilitarian-optimality and Ψ-maximization check.
OracleVerdict check_allocation(const Instance& inst, const MultilevelAllocation& alloc,
                               std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace hierfair
