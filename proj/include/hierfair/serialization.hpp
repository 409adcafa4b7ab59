#pragma once

#include <string>

#include "json.hpp"

#include "hierfair/allocation.hpp"
#include "hierfair/instance.hpp"

namespace hierfair {

/// Instance file:
///   {"m": 5, "items": ["g1", ...]?, "nodes": [{"id": 1, "parent": null,
///    "weight": 1, "criterion": "wnash"}, ...],
///    "leaf_valuations": {"4": {"type": "binary_additive", "approved": [...]}},
///    "meta": {...}}
/// Items are written by name when the instance names them. Weights are
/// integers or "a/b" strings.
nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

struct AllocationRecord {
  MultilevelAllocation allocation;
  std::vector<int> utilities;
  std::string algorithm;
  std::string seed;
  int iterations = 0;
};

/// {"bundles": {"<id>": [items]}, "utilities": {"<id>": v}, "discarded": [items],
///  "algorithm": ..., "seed": ..., "iterations": ...}
nlohmann::json allocation_to_json(const Instance& inst, const AllocationRecord& rec);
/// Rebuilds the allocation; the pool is left empty.
AllocationRecord allocation_from_json(const Instance& inst, const nlohmann::json& j);

Instance load_instance(const std::string& path);
void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace hierfair
