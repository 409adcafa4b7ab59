#pragma once

#include <string>
#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/exchange.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

struct MgysOptions {
  /// Verify non-redundancy, the bundle-size deltas of every augmentation and
  /// structural validity after each iteration. Failures are collected.
  bool audit = false;
  bool trace = false;
  Deadline deadline;
};

struct MgysTraceEvent {
  int iteration = 0;
  NodeId leaf = 0;
  std::vector<Item> path;  // empty when the leaf had no path and was removed
  std::vector<NodeId> pruned;
  std::string json() const;
};

struct MgysResult {
  /// bundles[0] holds the items left in the pool.
  MultilevelAllocation allocation;
  /// v_i(π), indexed by node id.
  std::vector<int> utilities;
  int iterations = 0;
  std::vector<MgysTraceEvent> trace;
  std::vector<std::string> audit_failures;
};

/// Working state of one MGYS run over a tree whose leaves carry arbitrary
/// matroid rank valuations. Node 0 is the pool, attached to the root. The
/// caller's tree is never modified; removal only marks nodes dead.
class MgysState {
 public:
  /// `agents` is indexed by node id and must be set for every leaf. The pool
  /// starts with `items` and the root holds exactly those items.
  MgysState(const Tree& tree, std::vector<const AgentValuation*> agents, const ItemSet& items,
            MgysOptions options = {});

  bool finished() const;
  /// Walks down from the root choosing, at each node, the live child whose gain
  /// dominates, ties to the least id; the pool is never chosen.
  NodeId select_leaf() const;
  /// One iteration: select, then augment or remove and prune.
  MgysTraceEvent step();
  void run();

  const MultilevelAllocation& allocation() const { return alloc_; }
  const std::vector<int>& utilities() const { return util_; }
  bool alive(NodeId i) const { return alive_.at(i); }
  int iterations() const { return iterations_; }
  const std::vector<MgysTraceEvent>& trace() const { return trace_; }
  const std::vector<std::string>& audit_failures() const { return failures_; }
  MgysResult result() const;

 private:
  void audit_state(const char* when);
  void audit_deltas(const std::vector<int>& before, NodeId x, NodeId y);
  int actual_utility(NodeId i) const;

  const Tree* tree_;
  MgysOptions options_;
  ExchangeState exchange_;
  MultilevelAllocation alloc_;
  std::vector<int> util_;
  std::vector<char> alive_;
  std::vector<int> live_children_;
  int iterations_ = 0;
  std::vector<MgysTraceEvent> trace_;
  std::vector<std::string> failures_;
};

MgysResult run_mgys(const Instance& inst, const MgysOptions& options = {});

}  // namespace hierfair
