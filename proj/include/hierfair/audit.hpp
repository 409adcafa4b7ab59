#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/instance.hpp"
#include "hierfair/oracle.hpp"

namespace hierfair {

struct NodeAudit {
  NodeId node = 0;
  std::vector<int> actual;     // v_j(π*) per child
  std::vector<int> reference;  // recomputed Ψ_i-maximizing profile per child
  std::vector<int> actual_sizes;
  std::vector<int> reference_sizes;
  bool failing = false;
  int deviation = 0;  // Σ_j | |π*(j)| - |A^i(j)| |
};

struct AuditReport {
  bool err1 = false;
  int err2 = 0;
  int discarded = 0;
  std::vector<NodeAudit> nodes;
  const NodeAudit& at(NodeId i) const;
};

struct AuditOptions {
  /// Reference profiles from exhaustive enumeration instead of GYS.
  bool use_oracle = false;
  std::uint64_t budget = kDefaultEnumerationBudget;
  Deadline deadline;
};

/// err1: some internal node's children profile is worse, under the node's
/// criterion, than the profile GYS (or the oracle) finds on π*(i) with the
/// children valued by v̂. err2: over those failing nodes, the summed
/// bundle-size differences to the GYS split. discarded: items no leaf holds.
AuditReport audit(const Instance& inst, const MultilevelAllocation& alloc, const AuditOptions& options = {});

/// Baseline: GYS over all leaves at once under the root's criterion, internal
/// bundles set to the union of their leaves and the root to every item.
MultilevelAllocation gys_on_leaves(const Instance& inst, const Deadline& deadline = {});

/// Items outside every leaf bundle.
int discarded_items(const Tree& tree, const MultilevelAllocation& alloc);

}  // namespace hierfair
