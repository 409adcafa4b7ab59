#pragma once

#include <vector>

#include "hierfair/allocation.hpp"
#include "hierfair/errors.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

struct SmaOptions {
  Deadline deadline;
};

struct SmaResult {
  MultilevelAllocation allocation;
  std::vector<int> utilities;
  /// Number of v̂ bundles evaluated across all nodes.
  std::size_t hat_v_evaluations = 0;
};

/// Top-down allocation: each internal node splits its bundle among its
/// children with GYS on the children's v̂, then the children recurse in
/// increasing id order.
SmaResult run_sma(const Instance& inst, const SmaOptions& options = {});

}  // namespace hierfair
